"""Desk-scale counting over GF(q): groups, flags, and position tests.

This module enumerates small classical groups (GL, Sp, SO) over a prime
field, lists their complete isotropic flags and unipotent elements of a
given Jordan type, and counts the pairs (g, flag) whose relative position
matches either the classical dimension conditions of the shape or, in
type A, a fixed Coxeter cycle.

All arithmetic here is dense modular arithmetic on plain integer tuples,
independent of the exact-field layer, for the speed the ~10^6-pair loops
need.  Only prime q is supported.
"""

from __future__ import annotations

from collections import Counter
from math import gcd, prod
from typing import Dict, List, Optional, Tuple

from .shapes import ShapeSeq

#: Hard cap on enumerated group order.
MAX_GROUP_ORDER = 10 ** 6

TYPE_A = "typeA"
SP = "symplectic"
SO_ODD = "orthogonal-odd-dim"
SO_EVEN = "orthogonal-even-dim"


class BoundExceeded(Exception):
    pass


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


# -- dense modular linear algebra on int tuples ------------------------------

def mat_identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b, p: int) -> tuple:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
                 for row in a)


def mat_vec(a, v, p: int) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def mat_inv(a, p: int) -> tuple:
    n = len(a)
    rows = [list(r) + [1 if i == j else 0 for j in range(n)]
            for i, r in enumerate(a)]
    for c in range(n):
        sel = next((i for i in range(c, n) if rows[i][c] % p), None)
        if sel is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[sel] = rows[sel], rows[c]
        inv = pow(rows[c][c], p - 2, p)
        rows[c] = [x * inv % p for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return tuple(tuple(r[n:]) for r in rows)


def mat_rank(rows, p: int) -> int:
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        sel = next((i for i in range(rank, len(work)) if work[i][c] % p), None)
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = pow(work[rank][c], p - 2, p)
        work[rank] = [x * inv % p for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c] % p:
                f = work[i][c]
                work[i] = [(x - f * y) % p
                           for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def nullspace_mod(rows, p: int, ncols: int) -> List[tuple]:
    work = [list(r) for r in rows] or [[0] * ncols]
    pivots = []
    pr = 0
    for c in range(ncols):
        sel = next((i for i in range(pr, len(work)) if work[i][c] % p), None)
        if sel is None:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        inv = pow(work[pr][c], p - 2, p)
        work[pr] = [x * inv % p for x in work[pr]]
        for i in range(len(work)):
            if i != pr and work[i][c] % p:
                f = work[i][c]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[pr])]
        pivots.append(c)
        pr += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for pi, pc in enumerate(pivots):
            v[pc] = (-work[pi][free]) % p
        basis.append(tuple(v))
    return basis


def unipotent_jordan_type(g, p: int) -> Optional[Counter]:
    """Jordan multiset of g - 1 when g is unipotent, else None."""
    n = len(g)
    nm = tuple(tuple((x - (1 if i == j else 0)) % p for j, x in enumerate(r))
               for i, r in enumerate(g))
    power = nm
    ranks = [n, mat_rank(nm, p)]
    while ranks[-1]:
        power = mat_mul(power, nm, p)
        ranks.append(mat_rank(power, p))
        if len(ranks) > n + 1:
            return None
    while len(ranks) < n + 2:
        ranks.append(0)
    out: Counter = Counter()
    for s in range(1, n + 1):
        m = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        if m:
            out[s] = m
    return out


# -- spaces and groups -------------------------------------------------------

class FiniteFormSpace:
    """GF(q)^nu with no form (type A), the split symplectic form, or the
    split symmetric form (antidiagonal ones; Q(v) = (v, v)/2)."""

    def __init__(self, mode: str, nu: int, q: int):
        assert mode in (TYPE_A, SP, SO_ODD, SO_EVEN)
        if not _is_prime(q):
            raise ValueError(f"q = {q} must be prime")
        if mode != TYPE_A and q == 2:
            raise ValueError("form-based counting needs odd q")
        if mode == SP:
            assert nu % 2 == 0
        if mode == SO_ODD:
            assert nu % 2 == 1
        if mode == SO_EVEN:
            assert nu % 2 == 0
        assert nu <= 7 and q <= 7, "tractability bounds"
        self.mode = mode
        self.nu = nu
        self.q = q
        self.form: Optional[tuple] = None
        if mode == SP:
            n = nu // 2
            self.form = tuple(
                tuple((1 if i < n else -1) % q if i + j == nu - 1 else 0
                      for j in range(nu)) for i in range(nu))
        elif mode in (SO_ODD, SO_EVEN):
            self.form = tuple(tuple(1 if i + j == nu - 1 else 0
                                    for j in range(nu)) for i in range(nu))

    def bilinear(self, u, v) -> int:
        return sum(u[i] * sum(f * y for f, y in zip(self.form[i], v))
                   for i in range(self.nu)) % self.q

    def preserves_form(self, g) -> bool:
        if self.form is None:
            return True
        gt = tuple(zip(*g))
        return mat_mul(mat_mul(gt, self.form, self.q), g, self.q) == self.form

    def to_json(self):
        return {"mode": self.mode, "nu": self.nu, "q": self.q,
                "form": None if self.form is None
                else [list(r) for r in self.form]}


def group_order_formula(space: FiniteFormSpace) -> int:
    q, nu = space.q, space.nu
    if space.mode == TYPE_A:
        return prod(q ** nu - q ** i for i in range(nu))
    if space.mode == SP:
        n = nu // 2
        return q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    if space.mode == SO_ODD:
        n = nu // 2
        return q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    n = nu // 2
    return (q ** (n * (n - 1)) * (q ** n - 1)
            * prod(q ** (2 * i) - 1 for i in range(1, n)))


def _primitive_root(q: int) -> int:
    for a in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = x * a % q
            seen.add(x)
        if len(seen) == q - 1:
            return a
    return 1


def _vector_pool(nu: int, q: int, size: int) -> List[tuple]:
    """The first ``size`` nonzero vectors in ascending base-q encoding."""
    out = []
    code = 1
    while len(out) < size and code < q ** nu:
        v = []
        c = code
        for _ in range(nu):
            v.append(c % q)
            c //= q
        out.append(tuple(v))
        code += 1
    return out


def _generators(space: FiniteFormSpace, attempt: int) -> List[tuple]:
    nu, q = space.nu, space.q
    gens: List[tuple] = []
    if space.mode == TYPE_A:
        for i in range(nu):
            for j in range(nu):
                if i != j:
                    g = [list(r) for r in mat_identity(nu)]
                    g[i][j] = 1
                    gens.append(tuple(tuple(r) for r in g))
        a = _primitive_root(q)
        d = [list(r) for r in mat_identity(nu)]
        d[0][0] = a
        gens.append(tuple(tuple(r) for r in d))
    elif space.mode == SP:
        # symplectic transvections x -> x + c (x, v) v over a vector pool
        pool = _vector_pool(nu, q, [2 * nu, 4 * nu, q ** nu][min(attempt, 2)])
        a = _primitive_root(q)
        for v in pool:
            for c in (1, a):
                gens.append(_transvection_sp(space, v, c))
    else:
        # products of a fixed reflection with reflections over a pool of
        # anisotropic vectors
        pool = [v for v in _vector_pool(
            nu, q, [6 * nu, 16 * nu, q ** nu][min(attempt, 2)])
            if space.bilinear(v, v) % q]
        refs = [_reflection(space, v) for v in pool]
        gens.extend(mat_mul(refs[0], r, q) for r in refs[1:])
    out = []
    seen = set()
    for g in gens:
        for h in (g, mat_inv(g, space.q)):
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def _transvection_sp(space: FiniteFormSpace, v, c) -> tuple:
    nu, q = space.nu, space.q
    cols = []
    for i in range(nu):
        e = tuple(1 if k == i else 0 for k in range(nu))
        b = space.bilinear(e, v)
        cols.append(tuple((e[k] + c * b * v[k]) % q for k in range(nu)))
    return tuple(zip(*cols))


def _reflection(space: FiniteFormSpace, v) -> tuple:
    nu, q = space.nu, space.q
    norm_inv = pow(space.bilinear(v, v), q - 2, q)
    cols = []
    for i in range(nu):
        e = tuple(1 if k == i else 0 for k in range(nu))
        c = 2 * space.bilinear(e, v) * norm_inv % q
        cols.append(tuple((e[k] - c * v[k]) % q for k in range(nu)))
    return tuple(zip(*cols))


class GroupEnum:
    def __init__(self, space: FiniteFormSpace, elements: List[tuple],
                 generators: List[tuple]):
        self.space = space
        self.elements = elements
        self.generators = generators
        self.order = len(elements)


_GROUP_CACHE: Dict[Tuple[str, int, int], "GroupEnum"] = {}
_FLAG_CACHE: Dict[Tuple[str, int, int], List[dict]] = {}


def enumerate_group_cached(space: FiniteFormSpace) -> GroupEnum:
    key = (space.mode, space.nu, space.q)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = enumerate_group(space)
    return _GROUP_CACHE[key]


def enumerate_isotropic_flags_cached(space: FiniteFormSpace) -> List[dict]:
    key = (space.mode, space.nu, space.q)
    if key not in _FLAG_CACHE:
        _FLAG_CACHE[key] = enumerate_isotropic_flags(space)
    return _FLAG_CACHE[key]


def enumerate_group(space: FiniteFormSpace) -> GroupEnum:
    """All group elements by breadth-first closure from generators.

    The generator pool is grown until the closure order matches the
    classical order formula, which acts as the correctness gate.
    """
    target = group_order_formula(space)
    if target > MAX_GROUP_ORDER:
        raise BoundExceeded(f"group order {target} exceeds cap")
    q = space.q
    for attempt in range(3):
        gens = _generators(space, attempt)
        seen = {mat_identity(space.nu)}
        frontier = [mat_identity(space.nu)]
        while frontier and len(seen) <= target:
            nxt = []
            for g in frontier:
                for h in gens:
                    gh = mat_mul(g, h, q)
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
        if len(seen) == target:
            elements = sorted(seen)
            if space.mode in (SO_ODD, SO_EVEN):
                assert all(space.preserves_form(g) for g in
                           elements[:50])
            return GroupEnum(space, elements, gens)
    raise AssertionError(
        f"closure order {len(seen)} never matched the formula {target}")


# -- flags -------------------------------------------------------------------

def _canonical_rep(v, echelon, p):
    """Reduce v by the echelon rows, then scale the leading entry to 1."""
    w = list(v)
    for row, piv in echelon:
        if w[piv] % p:
            f = w[piv]
            w = [(x - f * y) % p for x, y in zip(w, row)]
    lead = next((i for i, x in enumerate(w) if x % p), None)
    if lead is None:
        return None
    inv = pow(w[lead], p - 2, p)
    return tuple(x * inv % p for x in w)


def enumerate_isotropic_flags(space: FiniteFormSpace) -> List[dict]:
    """Every complete flag whose lower half is isotropic.

    Each flag is returned as {"basis": columns matrix, "inv": its inverse};
    the span of the first i columns is V_i.  For type A all complete flags
    are produced (depth nu); otherwise isotropic chains of depth n are
    completed upward by perpendicularity.
    """
    nu, q = space.nu, space.q
    depth = nu if space.mode == TYPE_A else nu // 2
    all_vectors = _vector_pool(nu, q, q ** nu - 1)
    flags: List[List[tuple]] = []

    def candidates(chosen, echelon):
        seen = set()
        out = []
        for v in all_vectors:
            if space.form is not None:
                if space.bilinear(v, v) % q:
                    continue
                if any(space.bilinear(v, w) % q for w in chosen):
                    continue
            rep = _canonical_rep(v, echelon, q)
            if rep is None or rep in seen:
                continue
            seen.add(rep)
            out.append(rep)
        return out

    def rec(chosen, echelon):
        if len(chosen) == depth:
            flags.append(list(chosen))
            return
        for rep in candidates(chosen, echelon):
            piv = next(i for i, x in enumerate(rep) if x)
            rec(chosen + [rep], echelon + [(rep, piv)])

    rec([], [])

    out = []
    for chosen in flags:
        cols = list(chosen)
        echelon = []
        for v in cols:
            r = _canonical_rep(v, echelon, q)
            echelon.append((r, next(i for i, x in enumerate(r) if x)))
        for i in range(depth, nu):
            # V_{i+1} is the perpendicular of V_{nu-i-1}
            lower = cols[:nu - i - 1]
            if lower:
                rows = [mat_vec(space.form, v, q) for v in lower]
                perp = nullspace_mod(rows, q, nu)
            else:
                perp = [tuple(1 if k == j else 0 for k in range(nu))
                        for j in range(nu)]
            for v in perp:
                rep = _canonical_rep(v, echelon, q)
                if rep is not None:
                    cols.append(rep)
                    echelon.append((rep, next(i for i, x in
                                              enumerate(rep) if x)))
                    break
            else:
                raise AssertionError("flag completion failed")
        basis = tuple(zip(*cols))
        out.append({"basis": basis, "inv": mat_inv(basis, q),
                    "cols": tuple(cols)})
    return out


def unipotents_of_type(group: GroupEnum, target: Counter) -> List[tuple]:
    target = Counter(dict(target))
    out = []
    for g in group.elements:
        jt = unipotent_jordan_type(g, group.space.q)
        if jt is not None and jt == target:
            out.append(g)
    return out


# -- relative position -------------------------------------------------------

def bruhat_pivots(m, p: int) -> Tuple[int, ...]:
    """Pivot rows (0-based) of the columns of an invertible matrix under
    left-to-right column reduction with bottom-most pivots.

    The result is the permutation w (as a tuple, column -> pivot row) with
    dim(V_i cap V'_j) = #{k < j : w(k) < i} for the flags spanned by
    column prefixes of the identity and of m.
    """
    n = len(m)
    cols = [list(col) for col in zip(*m)]
    pivots: List[int] = []
    kept: List[List[int]] = []
    for j in range(n):
        col = cols[j]
        for k, pk in enumerate(pivots):
            f = col[pk] % p
            if f:
                col = [(x - f * y) % p for x, y in zip(col, kept[k])]
        piv = max(i for i, x in enumerate(col) if x % p)
        inv = pow(col[piv], p - 2, p)
        kept.append([x * inv % p for x in col])
        pivots.append(piv)
    return tuple(pivots)


def coxeter_cycle(n: int) -> Tuple[int, ...]:
    """The fixed Coxeter element of S_n: the cycle sending k to k + 1."""
    return tuple((j + 1) % n for j in range(n))


def relative_position_typeA(flag_a: dict, flag_b: dict, q: int) -> tuple:
    m = mat_mul(flag_a["inv"], flag_b["basis"], q)
    return bruhat_pivots(m, q)


def _position_dims_ok(pivots: Tuple[int, ...], shape: ShapeSeq,
                      nu: int) -> bool:
    """The four dimension conditions, read off the Bruhat permutation."""
    def dim(i, j):  # dim(V_i cap V'_j), 1-based flag indices
        return sum(1 for k in range(j) if pivots[k] < i)

    p_lt = 0
    for r in range(1, shape.sigma + 1):
        p_r = shape.part(r)
        p_le = p_lt + p_r
        for i in range(1, p_r):
            d = p_lt + i
            if dim(d, d) != d - r:
                return False
            if dim(d + 1, d) != d - r + 1:
                return False
        if dim(nu - p_lt - 1, p_le) != p_le - r:
            return False
        if dim(nu - p_lt, p_le) != p_le - r + 1:
            return False
        p_lt = p_le
    return True


# -- pair counting -----------------------------------------------------------

def adjoint_order(group_type: str, n: int, q: int) -> int:
    """|G(F_q)| for the adjoint group of rank n: |PGL_{n+1}| in type A,
    the B/C order formula divided by gcd(2, q - 1) otherwise."""
    if group_type == "A":
        return prod(q ** (n + 1) - q ** i for i in range(n + 1)) // (q - 1)
    if group_type in ("B", "C"):
        return (q ** (n * n) * prod(q ** (2 * i) - 1
                                    for i in range(1, n + 1))
                // gcd(2, q - 1))
    raise ValueError(f"unsupported type {group_type!r}")


def count_pairs(space: FiniteFormSpace, gamma: Counter,
                shape: Optional[ShapeSeq] = None,
                group: Optional[GroupEnum] = None,
                flags: Optional[List[dict]] = None) -> dict:
    """Count pairs (g, flag) in the required relative position.

    For type A the position test is equality with the fixed Coxeter
    cycle; otherwise the four dimension conditions of the shape.  The
    report carries per-g and per-flag subtotals whose independently
    accumulated grand totals must agree (double counting).
    """
    q, nu = space.q, space.nu
    if group is None:
        group = enumerate_group_cached(space)
    if flags is None:
        flags = enumerate_isotropic_flags_cached(space)
    unis = unipotents_of_type(group, gamma)
    if space.mode == TYPE_A:
        target = coxeter_cycle(nu)
        ok_test = None
    else:
        assert shape is not None and shape.nu == nu
        target = None
        ok_test = lambda piv: _position_dims_ok(piv, shape, nu)  # noqa: E731

    hits: List[Tuple[int, int]] = []
    for gi, g in enumerate(unis):
        for fi, fl in enumerate(flags):
            gb = mat_mul(g, fl["basis"], q)
            m = mat_mul(fl["inv"], gb, q)
            piv = bruhat_pivots(m, q)
            if (piv == target) if target is not None else ok_test(piv):
                hits.append((gi, fi))

    per_g = [0] * len(unis)
    for gi, _fi in hits:
        per_g[gi] += 1
    per_flag = [0] * len(flags)
    for _gi, fi in hits:
        per_flag[fi] += 1
    total_g = sum(per_g)
    total_flag = sum(per_flag)
    assert total_g == total_flag, "double counting failed"
    return {
        "count": total_g,
        "unipotent_count": len(unis),
        "flag_count": len(flags),
        "per_g": per_g,
        "per_flag": per_flag,
        "double_count_consistent": total_g == total_flag,
    }


def count_report(space: FiniteFormSpace, gamma: Counter,
                 group_type: str, rank: int,
                 shape: Optional[ShapeSeq] = None,
                 expect_equal: bool = True, **kw) -> dict:
    """count_pairs plus the adjoint-order comparison verdict."""
    result = count_pairs(space, gamma, shape=shape, **kw)
    expected = adjoint_order(group_type, rank, space.q)
    result["adjoint_order"] = expected
    result["verdict"] = "equal" if result["count"] == expected else "differs"
    result["expected_relation"] = "equal" if expect_equal else "differs"
    return result
