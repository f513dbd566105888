"""Isospectrality certification by finite theta-coefficient comparison.

Two positive-definite forms are isospectral exactly when their theta
series agree.  For even integral forms of even dimension 2k and common
level N the theta series are modular of weight k on Gamma_0(N), so
agreement of all coefficients up to the cutoff

    mu0(N) * k / 6 + 2,      mu0(N) = N * prod_{p | N} (1 + 1/p),

forces the series to coincide; the comparison below is therefore a
certificate, not a heuristic.  Inputs that are rational, odd, or of odd
dimension are first moved into that setting by a common denominator
scale, a doubling, and a direct sum with themselves, none of which
changes the verdict (theta of q + q is theta(q)^2, and a square root of
a q-series with constant term 1 is unique).

When the levels of the two forms disagree the cutoff does not apply; the
verdict is then Inconclusive unless a bounded scan already exhibits a
differing coefficient, which is always conclusive evidence against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .enumeration import rep_spectrum
from .lattices import GramForm, form_direct_sum, is_even, level
from .linalg import DimensionError, det


class Verdict(enum.Enum):
    ISOSPECTRAL = "Isospectral"
    NOT_ISOSPECTRAL = "NotIsospectral"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class IsoCertificate:
    verdict: Verdict
    dimension: int
    dets: tuple[Fraction | int, Fraction | int]
    scaled_by: int
    doubled: bool
    summed: bool
    levels: tuple[int, int] | None
    threshold: Fraction | int | None
    compared_up_to: Fraction | int | None
    first_difference: Fraction | int | None
    notes: tuple[str, ...]
    # rows (value, count in a, count in b) of the comparison that settled
    # the verdict; empty when no spectra were compared
    table: tuple[tuple[Fraction | int, int, int], ...] = ()


def mu0(n: int) -> int:
    """n * prod over distinct primes p | n of (1 + 1/p), always an integer."""
    if n < 1:
        raise ValueError("mu0 needs a positive integer")
    out = n
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            out = out // p * (p + 1)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        out = out // rest * (rest + 1)
    return out


def hecke_threshold(q: GramForm):
    """Coefficient cutoff certifying theta equality at the form's level.

    Defined for even integral forms of even dimension 2k as
    mu0(level) * k / 6 + 2."""
    from .linalg import ShapeError

    if not q.matrix.is_integral():
        raise ShapeError("threshold requires an integral form")
    if not is_even(q):
        raise ShapeError("threshold requires an even form")
    if q.dimension == 0 or q.dimension % 2 != 0:
        raise DimensionError("threshold requires even dimension")
    k = q.dimension // 2
    thr = Fraction(mu0(level(q)) * k, 6) + 2
    return int(thr) if thr.denominator == 1 else thr


def _normalize(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _spectra_differ(a: GramForm, b: GramForm, cap):
    """Smallest value below cap where the representation counts differ,
    plus the full merged comparison table."""
    ta = dict(rep_spectrum(a, cap).items())
    tb = dict(rep_spectrum(b, cap).items())
    values = sorted(set(ta) | set(tb), key=Fraction)
    table = tuple((_normalize(Fraction(t)), ta.get(t, 0), tb.get(t, 0)) for t in values)
    diffs = [t for t, ra, rb in table if ra != rb]
    return (min(diffs) if diffs else None), table


def certify(a: GramForm, b: GramForm, *, max_compare_t=None, fallback_scan_cap: int = 50) -> IsoCertificate:
    """Decide isospectrality of two forms with an explicit certificate.

    Returns Isospectral only when coefficient agreement reaches the
    modular cutoff; NotIsospectral as soon as any compared coefficient
    differs (or a cheaper invariant does); Inconclusive otherwise.
    max_compare_t caps the comparison range, in units of the internally
    scaled forms."""
    notes: list[str] = []
    if a.dimension != b.dimension:
        return IsoCertificate(
            verdict=Verdict.NOT_ISOSPECTRAL,
            dimension=-1,
            dets=(_normalize(det(a.matrix)) if a.dimension else 1, _normalize(det(b.matrix)) if b.dimension else 1),
            scaled_by=1,
            doubled=False,
            summed=False,
            levels=None,
            threshold=None,
            compared_up_to=None,
            first_difference=None,
            notes=("dimensions differ",),
        )
    if a.dimension == 0:
        raise DimensionError("cannot certify empty forms")

    dim = a.dimension
    det_a, det_b = det(a.matrix), det(b.matrix)

    s = 1
    for x in a.matrix.entries + b.matrix.entries:
        s = s * x.denominator // gcd(s, x.denominator)
    qa = GramForm(a.matrix.scaled(s)) if s != 1 else a
    qb = GramForm(b.matrix.scaled(s)) if s != 1 else b
    if s != 1:
        notes.append(f"cleared denominators with scale {s}")

    def finish(verdict, levels=None, threshold=None, compared=None, first=None, table=()):
        return IsoCertificate(
            verdict=verdict,
            dimension=dim,
            dets=(_normalize(det_a), _normalize(det_b)),
            scaled_by=s,
            doubled=doubled,
            summed=summed,
            levels=levels,
            threshold=threshold,
            compared_up_to=compared,
            first_difference=first,
            notes=tuple(notes),
            table=table,
        )

    doubled = False
    summed = False

    if det_a != det_b:
        notes.append("determinants differ")
        return finish(Verdict.NOT_ISOSPECTRAL)

    if not (is_even(qa) and is_even(qb)):
        qa = GramForm(qa.matrix.scaled(2))
        qb = GramForm(qb.matrix.scaled(2))
        doubled = True
        notes.append("doubled both forms to reach even entries")

    if dim % 2 != 0:
        pre_cap = fallback_scan_cap
        first, table = _spectra_differ(qa, qb, pre_cap)
        if first is not None:
            notes.append("raw spectra differ before the direct-sum step")
            return finish(Verdict.NOT_ISOSPECTRAL, compared=pre_cap, first=first, table=table)
        qa = form_direct_sum(qa, qa)
        qb = form_direct_sum(qb, qb)
        summed = True
        notes.append("direct-summed each form with itself to reach even dimension")

    lev_a, lev_b = level(qa), level(qb)
    if lev_a != lev_b:
        notes.append(f"levels differ ({lev_a} vs {lev_b}); no shared cutoff")
        first, table = _spectra_differ(qa, qb, fallback_scan_cap)
        if first is not None:
            return finish(Verdict.NOT_ISOSPECTRAL, levels=(lev_a, lev_b), compared=fallback_scan_cap, first=first, table=table)
        return finish(Verdict.INCONCLUSIVE, levels=(lev_a, lev_b), compared=fallback_scan_cap, table=table)

    threshold = hecke_threshold(qa)
    cap = Fraction(threshold) // 1
    if max_compare_t is not None:
        cap = min(cap, Fraction(max_compare_t) // 1)
    first, table = _spectra_differ(qa, qb, cap)
    if first is not None:
        return finish(Verdict.NOT_ISOSPECTRAL, levels=(lev_a, lev_b), threshold=threshold, compared=_normalize(cap), first=first, table=table)
    if cap < Fraction(threshold) // 1:
        notes.append("agreement verified only below the cutoff")
        return finish(Verdict.INCONCLUSIVE, levels=(lev_a, lev_b), threshold=threshold, compared=_normalize(cap), table=table)
    return finish(Verdict.ISOSPECTRAL, levels=(lev_a, lev_b), threshold=threshold, compared=_normalize(cap), table=table)
