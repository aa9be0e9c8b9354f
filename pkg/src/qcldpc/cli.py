"""Command line interface.

Subcommands: keygen, encrypt, decrypt, analyze.  Exit codes: 0 success,
2 bad parameters or usage, 3 malformed input file, 4 infeasible parameter
set, 5 generation gave up, 6 decoding failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import keyfile, tables
from .codes import CodeSpec
from .crypto import decrypt, encrypt, keygen
from .decoder import DecoderConfig
from .errors import (DecodeFailureError, FormatError, GenerationFailureError,
                     InfeasibleParametersError, ParameterError)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _cmd_keygen(args) -> int:
    spec = CodeSpec(n0=args.n0, p=args.p, d_v=args.dv, m=args.m,
                    t_prime=args.t_prime)
    priv, pub = keygen(spec, seed=args.seed, systematic=args.systematic)
    Path(args.private).write_bytes(keyfile.serialize_private_key(priv))
    Path(args.public).write_bytes(keyfile.serialize_public_key(pub))
    print(f"wrote {args.private} and {args.public} "
          f"(n={spec.n}, k={spec.k}, t'={spec.t_prime})", file=sys.stderr)
    return 0


def _cmd_encrypt(args) -> int:
    pub = keyfile.parse_public_key(_read_bytes(args.key))
    message = _read_bytes(args.input)
    import random
    rng = random.Random(args.seed)
    blocks = [encrypt(pub, chunk, rng=rng)
              for chunk in keyfile.pack_cleartext(message, pub.spec.k)]
    _write_bytes(args.output, keyfile.serialize_ciphertext(
        pub.spec.n0, pub.spec.p, blocks))
    return 0


def _cmd_decrypt(args) -> int:
    priv = keyfile.parse_private_key(_read_bytes(args.key))
    n0, p, blocks = keyfile.parse_ciphertext(_read_bytes(args.input))
    spec = priv.spec
    if (n0, p) != (spec.n0, spec.p):
        raise FormatError(f"ciphertext is for n0={n0}, p={p}, "
                          f"key is for n0={spec.n0}, p={spec.p}")
    cfg = DecoderConfig(b=args.flip_threshold, max_iterations=args.max_iterations)
    chunks = [decrypt(priv, b, cfg=cfg) for b in blocks]
    _write_bytes(args.output, keyfile.unpack_cleartext(chunks))
    return 0


def _cmd_analyze(args) -> int:
    progress = None
    if not args.quiet:
        def progress(msg):
            print(msg, file=sys.stderr)
    header, rows = tables.build_table(args.table, m=args.m,
                                      iterations=args.iterations,
                                      per=args.per, progress=progress)
    if args.output == "-":
        tables.write_csv(header, rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            tables.write_csv(header, rows, fh)
    if args.plot is not None:
        from .plotting import render_table_figure
        render_table_figure(args.table, header, rows, args.plot)
        if not args.quiet:
            print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcldpc",
        description="QC-LDPC McEliece toolkit: keys, encryption, analysis tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate a key pair")
    kg.add_argument("--n0", type=int, default=4, help="circulant blocks per row")
    kg.add_argument("--p", type=int, default=6144, help="circulant block size")
    kg.add_argument("--dv", type=int, default=13, help="column weight of the private code")
    kg.add_argument("--m", type=int, default=7, help="row weight of the transformation")
    kg.add_argument("--t-prime", type=int, default=38, help="public error weight")
    kg.add_argument("--seed", type=int, default=None, help="deterministic generation seed")
    kg.add_argument("--systematic", action="store_true",
                    help="store the public key in systematic form (smaller file)")
    kg.add_argument("--private", default="private.key", help="private key path")
    kg.add_argument("--public", default="public.key", help="public key path")
    kg.set_defaults(func=_cmd_keygen)

    en = sub.add_parser("encrypt", help="encrypt a file or stdin")
    en.add_argument("--key", required=True, help="public key path")
    en.add_argument("--input", default="-", help="cleartext path, - for stdin")
    en.add_argument("--output", default="-", help="ciphertext path, - for stdout")
    en.add_argument("--seed", type=int, default=None,
                    help="deterministic error vectors (testing only)")
    en.set_defaults(func=_cmd_encrypt)

    de = sub.add_parser("decrypt", help="decrypt a file or stdin")
    de.add_argument("--key", required=True, help="private key path")
    de.add_argument("--input", default="-", help="ciphertext path, - for stdin")
    de.add_argument("--output", default="-", help="cleartext path, - for stdout")
    de.add_argument("--max-iterations", type=int, default=10,
                    help="bit-flipping iteration cap")
    de.add_argument("--flip-threshold", type=int, default=None,
                    help="fixed flip threshold b (default: from the analysis)")
    de.set_defaults(func=_cmd_decrypt)

    an = sub.add_parser("analyze", help="emit a report table as CSV")
    an.add_argument("--table", type=int, required=True, choices=tables.TABLE_IDS,
                    help="which table to compute")
    an.add_argument("--output", default="-", help="CSV path, - for stdout")
    an.add_argument("--plot", default=None, metavar="PNG",
                    help="also render the table as a figure")
    an.add_argument("--m", type=int, default=tables.DEFAULT_M,
                    help="transformation row weight")
    an.add_argument("--iterations", type=int, default=tables.DEFAULT_ITERATIONS,
                    help="decoder iterations assumed by the cost model")
    an.add_argument("--per", choices=("cleartext", "ciphertext"),
                    default="cleartext", help="per-bit divisor convention")
    an.add_argument("--quiet", action="store_true", help="suppress progress output")
    an.set_defaults(func=_cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except InfeasibleParametersError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GenerationFailureError as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    except DecodeFailureError as e:
        print(f"error: {e}", file=sys.stderr)
        return 6
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
