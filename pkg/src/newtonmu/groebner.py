"""Buchberger engine over Q under the graded reverse lexicographic order.

Polynomials are dicts mapping exponent tuples to nonzero Fractions.  Every
run is deterministic: pair selection, reducer choice and output ordering
depend only on the input.  All loops charge against a step budget and raise
BudgetExceeded rather than returning partial answers.
"""

from dataclasses import dataclass
from fractions import Fraction

from .geometry import ZERO, ONE
from .families import SPoly, spoly


DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """The computation exceeded its step budget; no result is implied."""


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quot(b, a):
    return tuple(x - y for x, y in zip(b, a))


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class _Row:
    lead: tuple
    lead_coeff: Fraction
    tail: dict
    sugar: int


class _Meter:
    def __init__(self, budget):
        self.left = budget
        self.used = 0

    def charge(self, amount=1):
        self.left -= amount
        self.used += amount
        if self.left < 0:
            raise BudgetExceeded(f"step budget exhausted after {self.used} steps")


def _make_row(poly, sugar=None):
    lead = max(poly, key=grevlex_key)
    tail = dict(poly)
    lead_coeff = tail.pop(lead)
    if sugar is None:
        sugar = max(sum(m) for m in poly)
    return _Row(lead, lead_coeff, tail, sugar)


def _reduce_full(poly, rows, meter, sugar):
    """Fully reduce poly against rows.  Returns (remainder, sugar)."""
    work = dict(poly)
    remainder = {}
    while work:
        mono = max(work, key=grevlex_key)
        coeff = work.pop(mono)
        reducer = None
        for row in rows:
            if _divides(row.lead, mono):
                reducer = row
                break
        if reducer is None:
            remainder[mono] = coeff
            continue
        meter.charge()
        q = _quot(mono, reducer.lead)
        factor = coeff / reducer.lead_coeff
        sugar = max(sugar, reducer.sugar + sum(q))
        for m, c in reducer.tail.items():
            key = _mul(m, q)
            val = work.get(key, ZERO) - factor * c
            if val:
                work[key] = val
            elif key in work:
                del work[key]
    return remainder, sugar


def _s_poly(a, b):
    lcm = _lcm(a.lead, b.lead)
    out = {}
    for row, sign in ((a, ONE), (b, -ONE)):
        q = _quot(lcm, row.lead)
        factor = sign / row.lead_coeff
        for m, c in row.tail.items():
            key = _mul(m, q)
            val = out.get(key, ZERO) + factor * c
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _pair_data(rows, i, j):
    lcm = _lcm(rows[i].lead, rows[j].lead)
    deg = sum(lcm)
    sugar = max(rows[i].sugar + deg - sum(rows[i].lead),
                rows[j].sugar + deg - sum(rows[j].lead))
    return (sugar, grevlex_key(lcm), i, j), lcm


def _buchberger(polys, meter):
    rows = []
    for p in polys:
        if p:
            rows.append(_make_row(dict(p)))
    pairs = {}
    for j in range(len(rows)):
        for i in range(j):
            key, lcm = _pair_data(rows, i, j)
            pairs[(i, j)] = (key, lcm)
    treated = set()
    while pairs:
        (i, j), (key, lcm) = min(pairs.items(), key=lambda kv: kv[1][0])
        del pairs[(i, j)]
        treated.add((i, j))
        meter.charge()
        if _mul(rows[i].lead, rows[j].lead) == lcm:
            continue  # coprime leading monomials
        chained = False
        for k in range(len(rows)):
            if k in (i, j):
                continue
            if (_divides(rows[k].lead, lcm)
                    and (min(i, k), max(i, k)) in treated
                    and (min(j, k), max(j, k)) in treated):
                chained = True
                break
        if chained:
            continue
        s = _s_poly(rows[i], rows[j])
        sugar = max(rows[i].sugar + sum(lcm) - sum(rows[i].lead),
                    rows[j].sugar + sum(lcm) - sum(rows[j].lead))
        remainder, sugar = _reduce_full(s, rows, meter, sugar)
        if not remainder:
            continue
        rows.append(_make_row(remainder, sugar))
        new = len(rows) - 1
        for k in range(new):
            pkey, plcm = _pair_data(rows, k, new)
            pairs[(k, new)] = (pkey, plcm)
    return rows


def _interreduce(rows, meter):
    rows = sorted(rows, key=lambda r: grevlex_key(r.lead))
    keep = []
    for idx, row in enumerate(rows):
        if any(k != idx and _divides(rows[k].lead, row.lead)
               and not (rows[k].lead == row.lead and k > idx)
               for k in range(len(rows))):
            continue
        keep.append(row)
    reduced = []
    for idx, row in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        poly = dict(row.tail)
        poly[row.lead] = row.lead_coeff
        remainder, _ = _reduce_full(poly, others, meter, row.sugar)
        if remainder:
            reduced.append(_make_row(remainder, row.sugar))
    out = []
    for row in sorted(reduced, key=lambda r: grevlex_key(r.lead)):
        monic = {m: c / row.lead_coeff for m, c in row.tail.items()}
        monic[row.lead] = ONE
        out.append(monic)
    return out


def _to_dicts(polys):
    dicts = []
    n_vars = None
    for p in polys:
        if isinstance(p, SPoly):
            n_vars = p.n_vars if n_vars is None else n_vars
            if p.n_vars != n_vars:
                raise ValueError("mixed variable counts")
            dicts.append(p.as_dict())
        else:
            d = {tuple(m): Fraction(c) for m, c in dict(p).items() if c}
            if d:
                n_vars = len(next(iter(d))) if n_vars is None else n_vars
            dicts.append(d)
    if n_vars is None:
        raise ValueError("cannot infer variable count from zero generators")
    return dicts, n_vars


def groebner_basis(polys, budget=DEFAULT_BUDGET):
    """Reduced monic basis, sorted by leading monomial.  Raises
    BudgetExceeded when the step cap is hit."""
    dicts, n_vars = _to_dicts(polys)
    if not any(dicts):
        return ()
    meter = _Meter(budget)
    rows = _buchberger(dicts, meter)
    return tuple(spoly_from_engine(n_vars, d) for d in _interreduce(rows, meter))


def spoly_from_engine(n_vars, d):
    return spoly(n_vars, list(d.items()))


def normal_form(p, basis, budget=DEFAULT_BUDGET):
    """Remainder of p on full reduction by the given basis polynomials."""
    dicts, n_vars = _to_dicts([p] + list(basis))
    meter = _Meter(budget)
    rows = [_make_row(d) for d in dicts[1:] if d]
    remainder, _ = _reduce_full(dicts[0], rows, meter, 0)
    return spoly_from_engine(n_vars, remainder)


def ideal_contains_one(polys, budget=DEFAULT_BUDGET):
    basis = groebner_basis(polys, budget)
    return len(basis) == 1 and basis[0].support_points() == ((0,) * basis[0].n_vars,)


def leading_monomials(basis):
    out = []
    for p in basis:
        out.append(max(p.support_points(), key=grevlex_key))
    return tuple(sorted(out))


def quotient_dimension(basis, cap=None):
    """Number of monomials outside the leading-term staircase of a reduced
    basis, or None when that count is infinite."""
    if not basis:
        return None
    lts = leading_monomials(basis)
    n = len(lts[0])
    if lts == ((0,) * n,):
        return 0
    bound = []
    for i in range(n):
        pure = [m[i] for m in lts if all(e == 0 for k, e in enumerate(m) if k != i)]
        if not pure:
            return None
        bound.append(min(pure))

    count = 0
    stack = [(0, (0,) * n)]
    while stack:
        i, mono = stack.pop()
        if any(_divides(l, mono) for l in lts):
            continue
        if i == n:
            count += 1
            if cap is not None and count > cap:
                raise BudgetExceeded(f"quotient dimension exceeds cap {cap}")
            continue
        for e in range(bound[i]):
            stack.append((i + 1, mono[:i] + (e,) + mono[i + 1:]))
    return count
