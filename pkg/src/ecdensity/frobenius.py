"""Traces of Frobenius for y^2 = x^3 + a x + b over F_p, p > 3.

lambda(a, b, p) = -sum_x ((x^3 + a x + b)/p), so #E(F_p) = p + 1 - lambda for
nonsingular reductions; the same Legendre-sum value is used at singular
residue pairs.  Degree-p^2 entries follow the convention
lambda(a, b, p^2) = lambda(a, b, p)^2 - p at every p > 3.

Full residue tables are built in O(p^2 log p) bounded work: one value-count
pass per row followed by a batched FFT cross-correlation with the Legendre
sequence, rounded back to integers and audited (row sums vanish, Hasse bound).
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .arith import is_prime, legendre, mod_inverse, psi4

TABLE_MAGIC = b"FRBT"
TABLE_VERSION = 1
DEFAULT_TABLE_CAP = 1000

_CRC64_POLY = 0xC96C5795D7870F42  # reflected ECMA-182


def _crc64_table() -> list[int]:
    table = []
    for i in range(256):
        crc = i
        for _ in range(8):
            crc = (crc >> 1) ^ (_CRC64_POLY if crc & 1 else 0)
        table.append(crc)
    return table


_CRC_TABLE = _crc64_table()


def crc64(data: bytes) -> int:
    crc = 0xFFFFFFFFFFFFFFFF
    for byte in data:
        crc = (crc >> 8) ^ _CRC_TABLE[(crc ^ byte) & 0xFF]
    return crc ^ 0xFFFFFFFFFFFFFFFF


def _check_p(p: int) -> None:
    if p <= 3 or not is_prime(p):
        raise ValueError(f"need a prime p > 3, got {p}")


def legendre_table(p: int) -> np.ndarray:
    """ls[t] = (t/p) as int8, built from the squares mod p."""
    _check_p(p)
    ls = np.full(p, -1, dtype=np.int8)
    ls[0] = 0
    x = np.arange(1, p, dtype=np.int64)
    ls[(x * x) % p] = 1
    return ls


def lambda_p(a: int, b: int, p: int) -> int:
    """Trace of Frobenius by direct Legendre summation, O(p)."""
    _check_p(p)
    ls = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    vals = (x * x % p * x + a % p * x + b) % p
    return -int(ls[vals].sum())


def lambda_p2(a: int, b: int, p: int) -> int:
    """lambda at p^2 under the lambda^2 - p convention (all p > 3)."""
    lam = lambda_p(a, b, p)
    return lam * lam - p


@dataclass(frozen=True)
class FrobTable:
    """Complete residue table: table[alpha, beta] = lambda(alpha, beta, p)."""

    p: int
    table: np.ndarray  # int16, shape (p, p), read-only

    def __post_init__(self):
        self.table.setflags(write=False)


def lambda_table(p: int) -> FrobTable:
    """All lambda(alpha, beta, p) at once.

    Row alpha: count occurrences of each value of x^3 + alpha*x, then
    correlate the counts with the Legendre sequence over all shifts beta via
    FFT.  Entries are exact: magnitudes stay < 2*sqrt(p) << the double
    mantissa, and two integer audits (zero row sums, Hasse bound) would catch
    any rounding failure.
    """
    _check_p(p)
    x = np.arange(p, dtype=np.int64)
    cubes = x * x % p * x % p
    counts = np.empty((p, p), dtype=np.float64)
    for alpha in range(p):
        counts[alpha] = np.bincount((cubes + alpha * x) % p, minlength=p)
    ls = legendre_table(p).astype(np.float64)
    spec = np.fft.fft(ls)[None, :] * np.conj(np.fft.fft(counts, axis=1))
    corr = np.fft.ifft(spec, axis=1).real
    lam = -np.rint(corr)
    hasse = 2.0 * math.sqrt(p)
    if np.abs(lam).max() >= hasse + 0.5 or np.abs(lam.sum(axis=1)).max() != 0:
        raise RuntimeError(f"table audit failed for p={p}")
    return FrobTable(p, lam.astype(np.int16))


def lambda_block(a: int, p: int, bs: np.ndarray) -> np.ndarray:
    """lambda(a, b, p) for one a and many b, without a full table.

    lambda(b) = -sum_t counts[t] * ls[(t + b) mod p] with counts the value
    distribution of x^3 + a x; evaluated as a gather over a doubled Legendre
    row, chunked to bound memory.
    """
    _check_p(p)
    ls = legendre_table(p).astype(np.int64)
    ls2 = np.concatenate((ls, ls))
    x = np.arange(p, dtype=np.int64)
    c = (x * x % p * x + a % p * x) % p
    counts = np.bincount(c, minlength=p)
    bmod = np.asarray(bs, dtype=np.int64) % p
    out = np.empty(len(bmod), dtype=np.int64)
    t = np.arange(p, dtype=np.int64)
    step = max(1, (1 << 22) // p)
    for i in range(0, len(bmod), step):
        blk = bmod[i : i + step]
        out[i : i + step] = -(counts[None, :] * ls2[blk[:, None] + t[None, :]]).sum(axis=1)
    return out


def lambda_sq_total(p: int, tab: FrobTable | None = None) -> int:
    """sum over all residue pairs of lambda^2; equals p^2 (p - 1)."""
    if tab is None:
        tab = lambda_table(p)
    t = tab.table.astype(np.int64)
    return int((t * t).sum())


# ---------------------------------------------------------------------------
# complete character-twisted sums


def twisted_complete_sum(p: int, h: int, k: int, tab: FrobTable | None = None) -> complex:
    """Brute force sum over all residues of lambda(alpha,beta,p) e((h alpha + k beta)/p)."""
    _check_p(p)
    if tab is None:
        tab = lambda_table(p)
    idx = np.arange(p)
    eh = np.exp(2j * np.pi * (h % p) * idx / p)
    ek = np.exp(2j * np.pi * (k % p) * idx / p)
    return complex(eh @ tab.table.astype(np.float64) @ ek)


def twisted_closed_form(p: int, h: int, k: int) -> complex:
    """Closed form: -(k/p) psi4(p) p^{3/2} e(-h^3 kbar^2 / p); 0 when p | k."""
    _check_p(p)
    if k % p == 0:
        return 0.0 + 0.0j
    kinv = mod_inverse(k % p, p)
    t = pow(h % p, 3, p) * kinv % p * kinv % p
    return -legendre(k, p) * psi4(p) * p**1.5 * np.exp(-2j * np.pi * t / p)


def twisted_complete_sum_all(p: int, tab: FrobTable | None = None) -> np.ndarray:
    """The brute-force sum for every (h, k) in [0,p)^2 at once (inverse 2D DFT)."""
    _check_p(p)
    if tab is None:
        tab = lambda_table(p)
    return np.fft.ifft2(tab.table.astype(np.float64)) * p * p


def twisted_closed_form_all(p: int) -> np.ndarray:
    """Closed-form grid matching twisted_complete_sum_all."""
    _check_p(p)
    ls = legendre_table(p).astype(np.float64)
    h = np.arange(p, dtype=np.int64)
    h3 = h * h % p * h % p
    kinv2 = np.zeros(p, dtype=np.int64)
    for k in range(1, p):
        v = mod_inverse(k, p)
        kinv2[k] = v * v % p
    phase = h3[:, None] * kinv2[None, :] % p
    out = -psi4(p) * p**1.5 * ls[None, :] * np.exp(-2j * np.pi * phase / p)
    out[:, 0] = 0.0
    return out


# ---------------------------------------------------------------------------
# binary cache: magic, version u32, p u64, entry width u8, int16 payload, crc64


def save_table(tab: FrobTable, path: str | Path) -> None:
    payload = np.ascontiguousarray(tab.table, dtype="<i2").tobytes()
    head = TABLE_MAGIC + struct.pack("<IQB", TABLE_VERSION, tab.p, 2)
    body = head + payload
    Path(path).write_bytes(body + struct.pack("<Q", crc64(body)))


class TableFormatError(ValueError):
    pass


def load_table(path: str | Path) -> FrobTable:
    """Read a cached table; any mismatch (magic, version, size, CRC) raises."""
    raw = Path(path).read_bytes()
    if len(raw) < 25:
        raise TableFormatError(f"{path}: truncated header")
    if raw[:4] != TABLE_MAGIC:
        raise TableFormatError(f"{path}: bad magic {raw[:4]!r}")
    version, p, width = struct.unpack("<IQB", raw[4:17])
    if version != TABLE_VERSION:
        raise TableFormatError(f"{path}: unsupported version {version}")
    if width != 2:
        raise TableFormatError(f"{path}: unsupported entry width {width}")
    need = 17 + 2 * p * p + 8
    if len(raw) != need:
        raise TableFormatError(f"{path}: wrong length {len(raw)}, expected {need}")
    (stored,) = struct.unpack("<Q", raw[-8:])
    if crc64(raw[:-8]) != stored:
        raise TableFormatError(f"{path}: checksum mismatch")
    table = np.frombuffer(raw[17:-8], dtype="<i2").reshape(p, p).astype(np.int16)
    return FrobTable(int(p), table)


def cache_dir() -> Path:
    """Cache directory; ECDENSITY_CACHE_DIR overrides the default."""
    env = os.environ.get("ECDENSITY_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ecdensity"


def table_path(p: int, directory: str | Path | None = None) -> Path:
    base = Path(directory) if directory is not None else cache_dir()
    return base / f"frob_p{p}.frbt"


def get_table(p: int, directory: str | Path | None = None, *, use_cache: bool = True) -> FrobTable:
    """Load a table from the cache when present and valid, else compute it.

    A freshly computed table is written back only when the cache directory
    already exists; corrupt files are recomputed but left in place for `gc`.
    """
    path = table_path(p, directory)
    if use_cache and path.exists():
        try:
            return load_table(path)
        except TableFormatError:
            pass
    tab = lambda_table(p)
    if use_cache and path.parent.is_dir():
        save_table(tab, path)
    return tab
