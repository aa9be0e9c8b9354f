"""Binary key and ciphertext formats.

All files open with an 8-byte magic and little-endian u32 header fields,
followed by bit-packed payloads (LSB of each byte first, matching the
BitVector byte order).  Key headers carry the full parameter set
(version, flags, n0, p, d_v, m, t'); ciphertext headers carry n0, p and a
block count.  Any malformed input raises FormatError.

Private key payload: the n0 sorted d_v-entry supports of the sparse check
blocks as u32s, then the dense scrambler blocks (k0^2, row-major), then
the transformation blocks (n0^2, row-major), one packed p-bit row each.
Public key payload: the k0 blocks of the non-identity column when the
systematic flag is set, otherwise all k0*n0 blocks row-major.

Cleartexts are framed before encryption: an 8-byte little-endian length
prefix, the payload, then zero padding up to a multiple of the k-bit
message block.
"""

from __future__ import annotations

import struct

from .bitvec import BitVector
from .circulant import CirculantElement, QcMatrix, circ_one, circ_zero
from .codes import CodeSpec, PrivateCode
from .circulant import SparseCirculant
from .crypto import PrivateKey, PublicKey
from .errors import FormatError

MAGIC_PUBLIC = b"QCLDPCPK"
MAGIC_PRIVATE = b"QCLDPCSK"
MAGIC_CIPHERTEXT = b"QCLDPCCT"
FORMAT_VERSION = 1
FLAG_SYSTEMATIC = 1

_KEY_HEADER = struct.Struct("<8s7I")
_CT_HEADER = struct.Struct("<8s5I")


def _block_bytes(p: int) -> int:
    return (p + 7) // 8


def _parse_key_header(data: bytes, magic: bytes):
    if len(data) < _KEY_HEADER.size:
        raise FormatError("truncated header")
    got, version, flags, n0, p, d_v, m, t_prime = _KEY_HEADER.unpack_from(data)
    if got != magic:
        raise FormatError(f"bad magic {got!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    if flags & ~FLAG_SYSTEMATIC:
        raise FormatError(f"unknown flags {flags:#x}")
    try:
        spec = CodeSpec(n0=n0, p=p, d_v=d_v, m=m, t_prime=t_prime)
    except ValueError as e:
        raise FormatError(f"invalid parameters in header: {e}") from None
    return spec, flags, data[_KEY_HEADER.size:]


def _unpack_blocks(payload: bytes, p: int, count: int):
    bb = _block_bytes(p)
    if len(payload) != bb * count:
        raise FormatError(f"payload of {len(payload)} bytes, expected {bb * count}")
    out = []
    for i in range(count):
        try:
            bv = BitVector.from_bytes(payload[i * bb:(i + 1) * bb], p)
        except ValueError as e:
            raise FormatError(f"bad block {i}: {e}") from None
        out.append(CirculantElement(p, bv))
    return out


def serialize_public_key(pub: PublicKey) -> bytes:
    spec = pub.spec
    flags = FLAG_SYSTEMATIC if pub.systematic else 0
    head = _KEY_HEADER.pack(MAGIC_PUBLIC, FORMAT_VERSION, flags, spec.n0,
                            spec.p, spec.d_v, spec.m, spec.t_prime)
    if pub.systematic:
        blocks = [pub.matrix.blocks[i][spec.k0] for i in range(spec.k0)]
    else:
        blocks = [b for row in pub.matrix.blocks for b in row]
    return head + b"".join(b.poly.to_bytes() for b in blocks)


def parse_public_key(data: bytes) -> PublicKey:
    spec, flags, payload = _parse_key_header(data, MAGIC_PUBLIC)
    k0, n0, p = spec.k0, spec.n0, spec.p
    systematic = bool(flags & FLAG_SYSTEMATIC)
    if systematic:
        col = _unpack_blocks(payload, p, k0)
        one, zero = circ_one(p), circ_zero(p)
        rows = tuple(tuple((one if i == j else zero) for j in range(k0)) + (col[i],)
                     for i in range(k0))
    else:
        flat = _unpack_blocks(payload, p, k0 * n0)
        rows = tuple(tuple(flat[i * n0:(i + 1) * n0]) for i in range(k0))
    return PublicKey(spec, QcMatrix(p, rows), systematic=systematic)


def serialize_private_key(priv: PrivateKey) -> bytes:
    spec = priv.spec
    head = _KEY_HEADER.pack(MAGIC_PRIVATE, FORMAT_VERSION, 0, spec.n0,
                            spec.p, spec.d_v, spec.m, spec.t_prime)
    sup = b"".join(struct.pack(f"<{spec.d_v}I", *blk.support) for blk in priv.code.h)
    s_rows = b"".join(b.poly.to_bytes() for row in priv.scrambler.blocks for b in row)
    q_rows = b"".join(b.poly.to_bytes() for row in priv.transformation.blocks for b in row)
    return head + sup + s_rows + q_rows


def parse_private_key(data: bytes) -> PrivateKey:
    spec, _, payload = _parse_key_header(data, MAGIC_PRIVATE)
    n0, p, d_v, k0 = spec.n0, spec.p, spec.d_v, spec.k0
    sup_len = 4 * n0 * d_v
    if len(payload) < sup_len:
        raise FormatError("truncated support table")
    supports = struct.unpack(f"<{n0 * d_v}I", payload[:sup_len])
    blocks = []
    for i in range(n0):
        sup = supports[i * d_v:(i + 1) * d_v]
        if list(sup) != sorted(set(sup)):
            raise FormatError(f"support of block {i} not sorted or not distinct")
        try:
            blocks.append(SparseCirculant(p, sup))
        except ValueError as e:
            raise FormatError(f"bad support in block {i}: {e}") from None
    bb = _block_bytes(p)
    rest = payload[sup_len:]
    if len(rest) != bb * (k0 * k0 + n0 * n0):
        raise FormatError("key payload has the wrong size")
    s_flat = _unpack_blocks(rest[:bb * k0 * k0], p, k0 * k0)
    q_flat = _unpack_blocks(rest[bb * k0 * k0:], p, n0 * n0)
    s = QcMatrix(p, tuple(tuple(s_flat[i * k0:(i + 1) * k0]) for i in range(k0)))
    q = QcMatrix(p, tuple(tuple(q_flat[i * n0:(i + 1) * n0]) for i in range(n0)))
    code = PrivateCode(spec, tuple(blocks))
    return PrivateKey(code, s, q)


def serialize_ciphertext(n0: int, p: int, blocks) -> bytes:
    blocks = list(blocks)
    n = n0 * p
    for b in blocks:
        if b.n != n:
            raise FormatError(f"ciphertext block of {b.n} bits, expected {n}")
    head = _CT_HEADER.pack(MAGIC_CIPHERTEXT, FORMAT_VERSION, 0, n0, p, len(blocks))
    return head + b"".join(b.to_bytes() for b in blocks)


def parse_ciphertext(data: bytes):
    """(n0, p, blocks)"""
    if len(data) < _CT_HEADER.size:
        raise FormatError("truncated header")
    got, version, flags, n0, p, count = _CT_HEADER.unpack_from(data)
    if got != MAGIC_CIPHERTEXT:
        raise FormatError(f"bad magic {got!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    if flags:
        raise FormatError(f"unknown flags {flags:#x}")
    if n0 < 2 or p < 2:
        raise FormatError("invalid dimensions in header")
    n = n0 * p
    nb = (n + 7) // 8
    payload = data[_CT_HEADER.size:]
    if len(payload) != nb * count:
        raise FormatError(f"payload of {len(payload)} bytes, expected {nb * count}")
    try:
        blocks = [BitVector.from_bytes(payload[i * nb:(i + 1) * nb], n)
                  for i in range(count)]
    except ValueError as e:
        raise FormatError(f"bad ciphertext block: {e}") from None
    return n0, p, blocks


def pack_cleartext(data: bytes, k: int) -> list:
    """Length-prefixed, zero-padded k-bit message blocks."""
    framed = struct.pack("<Q", len(data)) + data
    bits = int.from_bytes(framed, "little")
    total = len(framed) * 8
    count = max(1, -(-total // k))
    whole = BitVector(bits, count * k)
    return whole.split(k)


def unpack_cleartext(chunks) -> bytes:
    whole = BitVector.join(list(chunks))
    raw = whole.to_bytes()
    if len(raw) < 8:
        raise FormatError("message shorter than its length prefix")
    (length,) = struct.unpack("<Q", raw[:8])
    if length > len(raw) - 8:
        raise FormatError(f"length prefix {length} exceeds payload capacity")
    return raw[8:8 + length]
