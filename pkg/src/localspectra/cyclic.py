"""Tiles, spectra and homogeneity of subsets of Z/p^nZ.

Sets are handled as Python int bitmasks (bit k set iff k is in the set);
translation by s is a cyclic rotation.  Both searches are ascending
depth-first searches that fix 0 and return the lexicographically least
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclotomic import CyclotomicSum
from .errors import CertificateError, SearchBudgetExceeded


def to_mask(T: Iterable[int], N: int) -> int:
    m = 0
    for t in T:
        m |= 1 << (t % N)
    return m


def from_mask(mask: int) -> list[int]:
    out, k = [], 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def rotate(mask: int, s: int, N: int) -> int:
    """Bitmask of ``set + s (mod N)``."""
    s %= N
    full = (1 << N) - 1
    return ((mask << s) | (mask >> (N - s))) & full


def _normalize(T: Iterable[int], p: int, n: int) -> tuple[int, list[int]]:
    N = p**n
    ts = sorted({int(t) % N for t in T})
    if not ts:
        raise ValueError("T must be nonempty")
    return N, ts


def _is_power(x: int, p: int) -> int | None:
    k = 0
    while x > 1 and x % p == 0:
        x //= p
        k += 1
    return k if x == 1 else None


@dataclass(frozen=True)
class HomogeneityProfile:
    p: int
    n: int
    cards: tuple[int, ...]
    exponents: tuple[int | None, ...]
    homogeneous: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "cards": list(self.cards),
            "exponents": list(self.exponents),
            "homogeneous": self.homogeneous,
        }


def homogeneity_profile(T: Iterable[int], p: int, n: int) -> HomogeneityProfile:
    """``Card(T mod p^i)`` for i = 1..n and whether all are powers of p."""
    N, ts = _normalize(T, p, n)
    cards = tuple(len({t % p**i for t in ts}) for i in range(1, n + 1))
    exps = tuple(_is_power(c, p) for c in cards)
    return HomogeneityProfile(p, n, cards, exps, all(e is not None for e in exps))


# -- tiles ---------------------------------------------------------------------


@dataclass(frozen=True)
class TileCertificate:
    """``T ⊕ complement = Z/p^nZ``; verified on construction."""

    T: tuple[int, ...]
    complement: tuple[int, ...]
    p: int
    n: int

    def __post_init__(self):
        N = self.p**self.n
        seen = set()
        for t in self.T:
            for c in self.complement:
                x = (t + c) % N
                if x in seen:
                    raise CertificateError(f"{x} covered twice")
                seen.add(x)
        if len(seen) != N:
            raise CertificateError("complement does not cover the group")

    def to_json(self) -> dict:
        return {"complement": list(self.complement)}


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


def is_tile_bruteforce(T: Iterable[int], p: int, n: int, budget: int | None = None) -> TileCertificate | None:
    """Lexicographically least ``T'`` (containing 0) with ``T ⊕ T' = Z/p^nZ``."""
    N, ts = _normalize(T, p, n)
    k = len(ts)
    if N % k:
        return None
    need = N // k
    tmask = to_mask(ts, N)
    full = (1 << N) - 1
    b = _Budget(budget)
    chosen: list[int] = []

    def dfs(covered: int, last: int) -> bool:
        b.tick()
        if len(chosen) == need:
            return covered == full
        # the smallest uncovered residue must be hit by some later translate
        u = (~covered & (covered + 1)).bit_length() - 1
        options = sorted({(u - t) % N for t in ts if (u - t) % N > last})
        for s in range(last + 1, N):
            placed = rotate(tmask, s, N)
            if placed & covered:
                continue
            if not options or s > options[-1]:
                return False
            chosen.append(s)
            if dfs(covered | placed, s):
                return True
            chosen.pop()
        return False

    chosen.append(0)
    if dfs(tmask, 0):
        return TileCertificate(tuple(ts), tuple(chosen), p, n)
    return None


# -- spectra -------------------------------------------------------------------


def _vanishing_counts(counts: Sequence[int], p: int) -> bool:
    """``sum_k counts[k] zeta_N^k = 0`` iff counts are constant on cosets of the order-p subgroup."""
    N = len(counts)
    P = N // p
    return all(counts[r + j * P] == counts[r] for r in range(P) for j in range(1, p))


def zero_set_residues(T: Iterable[int], p: int, n: int) -> list[int]:
    """``Z_T = {delta != 0 : sum_t zeta^{delta t} = 0}`` in Z/p^nZ."""
    N, ts = _normalize(T, p, n)
    out = []
    for d in range(1, N):
        counts = [0] * N
        for t in ts:
            counts[d * t % N] += 1
        if _vanishing_counts(counts, p):
            out.append(d)
    return out


@dataclass(frozen=True)
class HadamardCertificate:
    """Spectrum ``Lambda`` of the uniform measure on T; rows of
    ``(zeta^{lambda t})`` verified pairwise orthogonal in exact arithmetic."""

    T: tuple[int, ...]
    spectrum: tuple[int, ...]
    p: int
    n: int

    def __post_init__(self):
        if len(self.T) != len(self.spectrum):
            raise CertificateError("|Lambda| != |T|")
        N = self.p**self.n
        for i, a in enumerate(self.spectrum):
            for b in self.spectrum[i + 1 :]:
                s = CyclotomicSum.from_exponents(self.p, self.n, _row(a - b, self.T, N))
                if not s.is_zero():
                    raise CertificateError(f"rows {a} and {b} are not orthogonal")

    def to_json(self) -> dict:
        return {"spectrum": list(self.spectrum)}


def _row(d: int, T: Sequence[int], N: int) -> dict:
    out: dict = {}
    for t in T:
        k = d * t % N
        out[k] = out.get(k, 0) + 1
    return out


def find_spectrum_bruteforce(
    T: Iterable[int],
    p: int,
    n: int,
    required: Iterable[int] = (),
    budget: int | None = None,
) -> HadamardCertificate | None:
    """Lexicographically least spectrum containing 0 (and ``required``), or None."""
    N, ts = _normalize(T, p, n)
    k = len(ts)
    zmask = to_mask(zero_set_residues(ts, p, n), N)
    req = sorted({int(r) % N for r in required} - {0})
    base = [0]
    cand = zmask
    for r in req:
        if not (cand >> r) & 1:
            return None
        base.append(r)
        cand &= rotate(zmask, r, N)
    if len(base) > k:
        return None
    for r in base:
        cand &= ~(1 << r)
    b = _Budget(budget)
    chosen: list[int] = []

    def dfs(cand: int, lo: int) -> bool:
        b.tick()
        if len(base) + len(chosen) == k:
            return True
        if bin(cand >> lo).count("1") < k - len(base) - len(chosen):
            return False
        c = cand >> lo << lo
        while c:
            low = c & -c
            x = low.bit_length() - 1
            c ^= low
            chosen.append(x)
            if dfs(cand & c & rotate(zmask, x, N), x + 1):
                return True
            chosen.pop()
        return False

    if dfs(cand, 0):
        lam = tuple(sorted(base + chosen))
        return HadamardCertificate(tuple(ts), lam, p, n)
    return None


@dataclass(frozen=True)
class TriadReport:
    T: tuple[int, ...]
    profile: HomogeneityProfile
    tile: TileCertificate | None
    spectrum: HadamardCertificate | None

    @property
    def consistent(self) -> bool:
        h = self.profile.homogeneous
        return h == (self.tile is not None) == (self.spectrum is not None)

    def to_json(self) -> dict:
        return {
            "set": list(self.T),
            "homogeneous": self.profile.homogeneous,
            "profile": self.profile.to_json(),
            "tile": None if self.tile is None else self.tile.to_json(),
            "spectrum": None if self.spectrum is None else list(self.spectrum.spectrum),
            "consistent": self.consistent,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TriadReport":
        """Rebuild from a report; certificates are re-verified on construction."""
        p, n = data["profile"]["p"], data["profile"]["n"]
        T = tuple(data["set"])
        tile = None if data["tile"] is None else TileCertificate(T, tuple(data["tile"]["complement"]), p, n)
        spec = None if data["spectrum"] is None else HadamardCertificate(T, tuple(data["spectrum"]), p, n)
        return cls(T, homogeneity_profile(T, p, n), tile, spec)


def triad(T: Iterable[int], p: int, n: int, budget: int | None = None) -> TriadReport:
    N, ts = _normalize(T, p, n)
    return TriadReport(
        tuple(ts),
        homogeneity_profile(ts, p, n),
        is_tile_bruteforce(ts, p, n, budget),
        find_spectrum_bruteforce(ts, p, n, budget=budget),
    )
