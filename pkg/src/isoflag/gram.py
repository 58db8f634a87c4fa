"""Canonical pairing tables for both form modes.

The table assigns to every pair of block indices (t, r) and every offset
delta = i - j a scalar value(t, r, delta), the canonical pairing of the t-th
block vector at position i against the r-th block vector at position j.
Values depend on (i, j) only through delta (translation invariance) and
satisfy value(t, r, delta) == value(r, t, -delta) in orthogonal mode.

Two modes:

* ``symplectic-or-char2``: fully closed-form.  Same-index pairs follow the
  signed-binomial formula sg(j-i) * C(|j-i|+pi-1, |j-i|-pi); distinct indices
  pair to zero; the extra kappa row's diagonal is the field image of 2 (which
  is 0 in characteristic 2).
* ``orthogonal-odd``: the inductive definition, processed level by level in
  strictly decreasing order of distinct part values, finishing with the
  virtual half level when kappa = 1.  Square roots taken along the way may
  extend the field; the finished table is stored over the final field.

The computed offset range covers |delta| <= 6*p_1 + 2 by default (enough for
model reconstruction and the adapted-collection checks), with internal
margins added per level because each level's recursion reads earlier levels
at shifted offsets.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Optional, Tuple

from .fields import FieldElement, RATIONALS, sqrt_extend
from .linalg import Matrix, Unique, solve_linear
from .shapes import (HALF_LEVEL, ORTHOGONAL, SYMPLECTIC, MODES, ShapeSeq,
                     binomial_nk, pi_window, psi)


class WindowExceeded(Exception):
    pass


def sg(i: int) -> int:
    assert i != 0
    return 1 if i > 0 else -1


def closed_form_value(case: str, level: int, s: int) -> Fraction:
    """Closed-form oracle values, as exact rationals.

    * ``prop16``: the same-index magnitude C(s + level - 1, s - level) for an
      index distance s >= level (the caller supplies the sign sg(j - i)).
    * ``sec25``: 2 (2pi+1)(2pi+2)...(2pi+s-1) (pi+s) / s! for s >= 1.
    * ``sec26``: 2 C(2pi+s, s) for s >= 0.
    """
    assert level >= 1
    if case == "prop16":
        assert s >= level
        return Fraction(comb(s + level - 1, s - level))
    if case == "sec25":
        if s < 1:
            raise ValueError("sec25 closed form is defined for s >= 1 only")
        num = Fraction(2)
        for j in range(1, s):
            num *= (2 * level + j)
        num *= (level + s)
        for j in range(1, s + 1):
            num /= j
        return num
    if case == "sec26":
        assert s >= 0
        return Fraction(2 * comb(2 * level + s, s))
    raise ValueError(f"unknown case {case!r}")


class _ConstPair:
    """All offsets share one value (zero rows, the kappa-row constants)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def get(self, delta):
        return self.value

    def lift(self, field):
        return _ConstPair(field.lift(self.value))

    def deltas(self, bound):
        return range(-bound, bound + 1)


class _RangePair:
    """Values stored for offsets lo..hi inclusive."""

    __slots__ = ("lo", "hi", "values")

    def __init__(self, lo, hi, values):
        self.lo = lo
        self.hi = hi
        self.values = values

    def get(self, delta):
        if delta < self.lo or delta > self.hi:
            raise WindowExceeded(f"offset {delta} outside computed range "
                                 f"[{self.lo}, {self.hi}]")
        return self.values[delta]

    def lift(self, field):
        return _RangePair(self.lo, self.hi,
                          {d: field.lift(v) for d, v in self.values.items()})

    def deltas(self, bound):
        return range(max(self.lo, -bound), min(self.hi, bound) + 1)


class GramTable:
    """Memoized canonical pairing values for one (shape, mode, field)."""

    def __init__(self, shape: ShapeSeq, mode: str, field=None,
                 delta_bound: Optional[int] = None):
        assert mode in MODES
        assert shape.valid_for_mode(mode)
        if field is None:
            field = RATIONALS
        if mode == ORTHOGONAL:
            assert field.char != 2, "orthogonal-odd mode needs characteristic != 2"
        if mode == SYMPLECTIC and shape.kappa == 1:
            assert field.char == 2, \
                "kappa=1 in symplectic-or-char2 mode is the char-2 orthogonal case"
        self.shape = shape
        self.mode = mode
        self.field = field
        p1 = shape.part(1)
        self.delta_bound = delta_bound if delta_bound is not None else 6 * p1 + 2
        self.diagnostics = {"mu_zero_levels": [], "sec28_singular": False}
        self.case_map: Dict[Tuple[int, int], str] = {}
        self.aux: Dict[object, dict] = {}
        self._memo: Dict[Tuple[int, int], object] = {}
        if mode == ORTHOGONAL:
            self._build_orthogonal()

    # -- public accessors ---------------------------------------------------

    def value(self, t: int, r: int, delta: int) -> FieldElement:
        """The canonical value for block pair (t, r) at offset delta = i - j."""
        sigma_k = self.shape.sigma + self.shape.kappa
        assert 1 <= t <= sigma_k and 1 <= r <= sigma_k
        if self.mode == SYMPLECTIC:
            return self._symplectic_value(t, r, delta)
        if t <= r:
            return self._memo[(t, r)].get(delta)
        return self._memo[(r, t)].get(-delta)

    def pairing(self, t: int, i: int, r: int, j: int) -> FieldElement:
        """The bilinear form value of block vector (t, i) against (r, j)."""
        return self.value(t, r, i - j)

    def gram_matrix(self) -> Matrix:
        idx = self.shape.block_indices()
        return Matrix(self.field,
                      [[self.pairing(t, i, r, j) for (r, j) in idx]
                       for (t, i) in idx])

    # -- symplectic / char-2 closed form ------------------------------------

    def _symplectic_value(self, t, r, delta):
        sigma = self.shape.sigma
        if t == r and t <= sigma:
            p = self.shape.part(t)
            if abs(delta) < p:
                return self.field.zero
            mag = comb(abs(delta) + p - 1, abs(delta) - p)
            return self.field.from_int(sg(-delta) * mag)
        if t == r:  # the kappa row diagonal: field image of 2
            return self.field.from_int(2)
        return self.field.zero

    # -- orthogonal-odd construction ----------------------------------------

    def _build_orthogonal(self):
        shape = self.shape
        p1 = shape.part(1)
        levels = sorted(set(shape.parts), reverse=True)
        n_levels = len(levels) + (1 if shape.kappa else 0)
        # Each level reads the previous one at offsets shifted by up to
        # 2p_a + 2pi <= 4p_1, and internally the diagonal reads the cross
        # values (and the off-diagonal the diagonal) at shifted offsets too,
        # so output ranges shrink by a fixed margin per level.
        margin = 12 * p1 + 12
        for pos, level in enumerate(levels):
            d_level = self.delta_bound + (n_levels - 1 - pos) * margin
            self._do_level(level, d_level)
        if shape.kappa:
            if shape.sigma % 2 == 0:
                self._half_level_even()
            else:
                self._half_level_odd(self.delta_bound)

    def _val(self, t, r, delta):
        if t <= r:
            return self._memo[(t, r)].get(delta)
        return self._memo[(r, t)].get(-delta)

    def _set_field(self, field):
        if field == self.field:
            return
        self.field = field
        self._memo = {k: v.lift(field) for k, v in self._memo.items()}
        for data in self.aux.values():
            for key, val in data.items():
                if isinstance(val, FieldElement):
                    data[key] = field.lift(val)
                elif isinstance(val, dict):
                    data[key] = {k: field.lift(v) for k, v in val.items()}

    def _has_even_drop(self, y: int, x: int) -> bool:
        """Is there an even r in [y, x-1] with part(r) > part(r+1)?

        The virtual part at index sigma+1 counts as 1/2 (kappa = 1), so
        r = sigma always drops when x = sigma + 1.
        """
        shape = self.shape
        for r in range(y, x):
            if r % 2 != 0:
                continue
            p_r = shape.part(r)
            p_next = Fraction(1, 2) if r == shape.sigma else shape.part(r + 1)
            if p_r > p_next:
                return True
        return False

    def _do_level(self, level: int, d_level: int):
        shape = self.shape
        xs = [x for x in range(1, shape.sigma + 1) if shape.part(x) == level]
        win = pi_window(shape, level)
        p1 = shape.part(1)
        d_diag = d_level + 4 * p1 + 4
        d_cross = d_level + 8 * p1 + 8
        if win is None:
            # top level: self-contained diagonal plus same-level off-diagonal
            for x in xs:
                self._diag_25(x, level, d_diag)
            for yi, y in enumerate(xs):
                for x in xs[yi + 1:]:
                    self._off_26(y, x, level, d_level)
            return
        a, b = win.a, win.b
        window = list(range(a, b + 1))
        x0 = xs[0]
        if b % 2 == 1:
            self._compute_aux(level, window, a)
            aux = self.aux[level]
            for t in window:
                if self._has_even_drop(t, x0):
                    for x in xs:
                        self._memo[(t, x)] = _ConstPair(self.field.zero)
                        self.case_map[(t, x)] = "2.2"
                else:
                    self._cross_23(t, x0, level, a, window, aux, d_cross)
                    for x in xs[1:]:
                        self._memo[(t, x)] = self._memo[(t, x0)]
                        self.case_map[(t, x)] = "2.3"
            for y in range(1, shape.sigma + 1):
                if shape.part(y) > level and y not in window:
                    assert self._has_even_drop(y, x0), \
                        "index above the window must satisfy the even-drop rule"
                    for x in xs:
                        self._memo[(y, x)] = _ConstPair(self.field.zero)
                        self.case_map[(y, x)] = "2.2"
            for x in xs:
                self._diag_24(x, level, a, window, d_diag)
        else:
            # b even: every higher row pairs to zero against this level
            for y in range(1, shape.sigma + 1):
                if shape.part(y) > level:
                    assert self._has_even_drop(y, x0), \
                        "b even forces the even-drop rule for every higher row"
                    for x in xs:
                        self._memo[(y, x)] = _ConstPair(self.field.zero)
                        self.case_map[(y, x)] = "2.2"
            for x in xs:
                self._diag_25(x, level, d_diag)
        for yi, y in enumerate(xs):
            for x in xs[yi + 1:]:
                self._off_26(y, x, level, d_level)

    # -- auxiliary systems (alpha, beta, merged coefficients, mu) ------------

    def _compute_aux(self, level: int, window, a: int):
        shape = self.shape
        f = self.field
        pi2 = 2 * level
        nk = [f.from_int(binomial_nk(level, k)) for k in range(pi2 + 1)]
        p = shape.part
        p_a = p(a)
        alpha: Dict[Tuple[int, int], FieldElement] = {}
        beta: Dict[Tuple[int, int], FieldElement] = {}
        max_h = max(p(r) - level for r in window)
        for h in range(max_h + 1):
            # alpha step: descending induction over the window
            for r in reversed(window):
                if h > p(r) - level - 1:
                    continue
                rhs = f.zero
                for k in range(pi2 + 1):
                    if not nk[k].is_zero:
                        rhs = rhs - nk[k] * self._val(a, r, k + 2 * p_a - pi2 - (p(r) + h))
                for rp in window:
                    for i in range(min(h, p(rp) - level)):
                        if alpha[(rp, i)].is_zero:
                            continue
                        for k in range(pi2 + 1):
                            rhs = rhs - alpha[(rp, i)] * nk[k] * \
                                self._val(rp, r, k + i - (p(r) + h))
                    for j in range(1, min(h, p(rp) - level + 1)):
                        bcoef = beta[(rp, 2 * p(rp) - 2 * level - j)]
                        if bcoef.is_zero:
                            continue
                        for k in range(pi2 + 1):
                            rhs = rhs - bcoef * nk[k] * \
                                self._val(rp, r, k + 2 * p(rp) - 2 * level - j - (p(r) + h))
                for rp in window:
                    if rp > r and p(rp) == p(r):
                        rhs = rhs - alpha[(rp, h)] * self._val(rp, r, -p(r))
                alpha[(r, h)] = rhs
            # beta step: ascending induction over the window
            if h >= 1:
                for r in window:
                    if h > p(r) - level:
                        continue
                    rhs = f.zero
                    for k in range(pi2 + 1):
                        if not nk[k].is_zero:
                            rhs = rhs - nk[k] * self._val(a, r, k + 2 * p_a - pi2 - (p(r) - h))
                    for rp in window:
                        for i in range(min(h - 1, p(rp) - level)):
                            if alpha[(rp, i)].is_zero:
                                continue
                            for k in range(pi2 + 1):
                                rhs = rhs - alpha[(rp, i)] * nk[k] * \
                                    self._val(rp, r, k + i - (p(r) - h))
                        for j in range(1, min(h, p(rp) - level + 1)):
                            bcoef = beta[(rp, 2 * p(rp) - 2 * level - j)]
                            if bcoef.is_zero:
                                continue
                            for k in range(pi2 + 1):
                                rhs = rhs - bcoef * nk[k] * \
                                    self._val(rp, r, k + 2 * p(rp) - 2 * level - j - (p(r) - h))
                    for rp in window:
                        if rp < r:
                            rhs = rhs - beta[(rp, 2 * p(rp) - 2 * level - h)] * \
                                self._val(rp, r, 2 * p(rp) - p(r))
                    beta[(r, 2 * p(r) - 2 * level - h)] = rhs
        atilde: Dict[Tuple[int, int], FieldElement] = {}
        for t in window:
            for j in range(2 * p(t) - 2 * level):
                atilde[(t, j)] = alpha[(t, j)] if j <= p(t) - level - 1 \
                    else beta[(t, j)]
        nu: Dict[int, FieldElement] = {}
        for t in window:
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * self._val(a, t, k + 2 * p_a - pi2 - (2 * p(t) - level))
            for r in window:
                for i in range(2 * p(r) - 2 * level):
                    if atilde[(r, i)].is_zero:
                        continue
                    for k in range(pi2 + 1):
                        acc = acc + nk[k] * self._val(r, t, k + i - (2 * p(t) - level)) \
                            * atilde[(r, i)]
            nu[t] = acc
        self.aux[level] = {"alpha": alpha, "beta": beta, "atilde": atilde, "nu": nu}
        nu_a = nu[a]
        if nu_a.is_zero:
            self.diagnostics["mu_zero_levels"].append(level)
            mu = self.field.zero
        else:
            root, newfield = sqrt_extend(self.field.from_int(2) * nu_a)
            self._set_field(newfield)
            mu = self.field.from_int(2) / root
        self.aux[level]["mu"] = mu

    # -- the recursion cases -------------------------------------------------

    def _nk_elems(self, level):
        return [self.field.from_int(binomial_nk(level, k))
                for k in range(2 * level + 1)]

    def _cross_23(self, t, x, level, a, window, aux, d_range):
        """Values for a window row t against a level representative x."""
        shape = self.shape
        f = self.field
        p_t = shape.part(t)
        p_a = shape.part(a)
        pi2 = 2 * level
        nk = self._nk_elems(level)
        mu = aux["mu"]
        atilde = aux["atilde"]
        nu_t = aux["nu"][t]
        vals: Dict[int, FieldElement] = {}
        for d in range(-level, 2 * p_t - level):
            vals[d] = f.zero
        vals[2 * p_t - level] = mu * nu_t

        def rhs_up(d):
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * self._val(t, a, d - k - (2 * p_a - pi2))
            for r in window:
                for h in range(2 * shape.part(r) - pi2):
                    if atilde[(r, h)].is_zero:
                        continue
                    for k in range(pi2 + 1):
                        acc = acc + nk[k] * self._val(t, r, d - k - h) * atilde[(r, h)]
            return mu * acc

        for s in range(1, d_range - (2 * p_t - level) + 1):
            d = 2 * p_t - level + s
            acc = rhs_up(d)
            for k in range(1, min(pi2, s) + 1):
                acc = acc - nk[k] * vals[d - k]
            vals[d] = acc

        def rhs_down(d):
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * self._val(a, t, k + 2 * p_a - pi2 - (d + pi2))
            for r in window:
                for h in range(2 * shape.part(r) - pi2):
                    if atilde[(r, h)].is_zero:
                        continue
                    for k in range(pi2 + 1):
                        acc = acc + nk[k] * self._val(r, t, k + h - (d + pi2)) * atilde[(r, h)]
            return mu * acc

        for s in range(1, d_range - level + 1):
            d = -level - s
            acc = rhs_down(d)
            for k in range(max(0, pi2 - s), pi2):
                acc = acc - nk[k] * vals[d + pi2 - k]
            vals[d] = acc
        self._memo[(t, x)] = _RangePair(min(vals), max(vals), vals)
        self.case_map[(t, x)] = "2.3"

    def _diag_24(self, x, level, a, window, d_range):
        """Same-index values at a level whose window ends at an odd b."""
        shape = self.shape
        f = self.field
        p_a = shape.part(a)
        pi2 = 2 * level
        nk = self._nk_elems(level)
        aux = self.aux[level]
        mu = aux["mu"]
        atilde = aux["atilde"]
        vals: Dict[int, FieldElement] = {}
        for d in range(-level + 1, level):
            vals[d] = f.zero
        vals[-level] = f.one
        vals[level] = f.one
        for s in range(1, d_range - level + 1):
            d = -level - s
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * self._val(a, x, d + k + 2 * p_a - pi2)
            for r in window:
                for h in range(2 * shape.part(r) - pi2):
                    if atilde[(r, h)].is_zero:
                        continue
                    for k in range(pi2 + 1):
                        acc = acc + nk[k] * self._val(r, x, d + k + h) * atilde[(r, h)]
            acc = mu * acc
            for k in range(1, min(pi2, s) + 1):
                acc = acc - nk[k] * vals[d + k]
            vals[d] = acc
            vals[-d] = acc
        self._memo[(x, x)] = _RangePair(min(vals), max(vals), vals)
        self.case_map[(x, x)] = "2.4"

    def _diag_25(self, x, level, d_range):
        """Same-index values when b is even or the level is the top one."""
        f = self.field
        vals: Dict[int, FieldElement] = {}
        for d in range(-level + 1, level):
            vals[d] = f.zero
        vals[-level] = f.one
        vals[level] = f.one
        if d_range >= level + 1:
            vals[-level - 1] = f.from_int(2 * level + 2)
            vals[level + 1] = vals[-level - 1]
        coeffs = [f.from_int((-1) ** k * comb(2 * level + 1, k))
                  for k in range(2 * level + 2)]
        for s in range(2, d_range - level + 1):
            d = -level - s
            acc = f.zero
            for k in range(1, min(2 * level + 1, s) + 1):
                acc = acc - coeffs[k] * vals[d + k]
            vals[d] = acc
            vals[-d] = acc
        self._memo[(x, x)] = _RangePair(min(vals), max(vals), vals)
        self.case_map[(x, x)] = "2.5"

    def _off_26(self, y, x, level, d_range):
        """Distinct indices at the same level."""
        f = self.field
        pi2 = 2 * level
        nk = self._nk_elems(level)
        diag = self._memo[(x, x)]
        vals: Dict[int, FieldElement] = {}
        for d in range(-level, level):
            vals[d] = f.zero
        for s in range(1, d_range - level + 1):
            d = -level - s
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * diag.get(d + k)
            for k in range(1, min(pi2, s - 1) + 1):
                acc = acc - nk[k] * vals[d + k]
            vals[d] = acc
        for s in range(0, d_range - level + 1):
            d = level + s
            acc = f.zero
            for k in range(pi2 + 1):
                acc = acc + nk[k] * diag.get(d + k - pi2)
            for k in range(max(0, pi2 - s), pi2):
                acc = acc - nk[k] * vals[d + k - pi2]
            vals[d] = acc
        self._memo[(y, x)] = _RangePair(min(vals), max(vals), vals)
        self.case_map[(y, x)] = "2.6"

    # -- the virtual half level ----------------------------------------------

    def _half_level_even(self):
        sigma = self.shape.sigma
        for y in range(1, sigma + 1):
            self._memo[(y, sigma + 1)] = _ConstPair(self.field.zero)
            self.case_map[(y, sigma + 1)] = "2.7"
        self._memo[(sigma + 1, sigma + 1)] = _ConstPair(self.field.from_int(2))
        self.case_map[(sigma + 1, sigma + 1)] = "2.7"

    def _half_level_odd(self, d_range):
        shape = self.shape
        sigma = shape.sigma
        ps = psi(shape)
        a = max(t for t in range(1, sigma + 1) if t % 2 == 1 and ps[t - 1] == 1)
        p = shape.part
        p_a = p(a)
        idx = [(r, i) for r in range(a, sigma + 1) for i in range(2 * p(r))]
        gmat = Matrix(self.field,
                      [[self._val(r, rp, i - ip) for (rp, ip) in idx]
                       for (r, i) in idx])
        rhs = [self._val(a, rp, 2 * p_a - ip) for (rp, ip) in idx]
        sol = solve_linear(gmat, rhs)
        if isinstance(sol, Unique):
            c = {key: v for key, v in zip(idx, sol.x)}
        else:
            self.diagnostics["sec28_singular"] = True
            c = {key: self.field.zero for key in idx}
        nu = self.field.zero
        for (r, i) in idx:
            if c[(r, i)].is_zero:
                continue
            for (rp, ip) in idx:
                nu = nu - c[(r, i)] * c[(rp, ip)] * self._val(r, rp, i - ip)
        self.aux[HALF_LEVEL] = {"c": c, "nu": nu}
        root, newfield = sqrt_extend(nu / 2)
        self._set_field(newfield)
        nu = self.field.lift(nu) if newfield != nu.field else nu
        c = self.aux[HALF_LEVEL]["c"]
        cx0 = root
        self.aux[HALF_LEVEL]["cx0"] = cx0
        if cx0.is_zero:
            raise ArithmeticError("half-level scale factor vanished; "
                                  "the pairing table cannot be completed")
        inv = cx0.inverse()
        # rows below the window start pair to zero (even-drop rule)
        x = sigma + 1
        for y in range(1, a):
            assert self._has_even_drop(y, x)
            self._memo[(y, x)] = _ConstPair(self.field.zero)
            self.case_map[(y, x)] = "2.2"
        for rp in range(a, sigma + 1):
            vals: Dict[int, FieldElement] = {}
            for d in range(-d_range, d_range + 1):
                # d = i' - h for the pair (r', x)
                acc = self._val(a, rp, 2 * p_a - d)
                for (r, i) in idx:
                    if not c[(r, i)].is_zero:
                        acc = acc - c[(r, i)] * self._val(r, rp, i - d)
                vals[d] = inv * acc
            self._memo[(rp, x)] = _RangePair(-d_range, d_range, vals)
            self.case_map[(rp, x)] = "2.8"
        inv2 = inv * inv
        vals = {}
        for d in range(-d_range, d_range + 1):
            acc = self._val(a, a, d)
            for (r, i) in idx:
                if c[(r, i)].is_zero:
                    continue
                acc = acc - c[(r, i)] * (self._val(r, a, i + d - 2 * p_a)
                                         + self._val(r, a, i - d - 2 * p_a))
                for (rp, ip) in idx:
                    if not c[(rp, ip)].is_zero:
                        acc = acc + c[(r, i)] * c[(rp, ip)] * \
                            self._val(r, rp, i - ip + d)
            vals[d] = inv2 * acc
        self._memo[(x, x)] = _RangePair(-d_range, d_range, vals)
        self.case_map[(x, x)] = "2.8"

    def to_json(self):
        return {
            "shape": self.shape.to_json(),
            "mode": self.mode,
            "field": self.field.to_json(),
            "window": self.delta_bound,
            "diagnostics": self.diagnostics,
        }


def check_conjecture_210(k: int, field=None):
    """The square of the corner cross value for shape (k, 1).

    Returns (table, square, expected, matches): the table used, the computed
    square of value(1, 2, 2k - 1), the predicted (-1)^(k-1) * 2^(2k) as a
    field element, and whether they agree.
    """
    assert k >= 2
    shape = ShapeSeq((k, 1), kappa=0)
    table = GramTable(shape, ORTHOGONAL, field, delta_bound=2 * k + 2)
    v = table.value(1, 2, 2 * k - 1)
    square = v * v
    expected = table.field.from_int((-1) ** (k - 1) * 2 ** (2 * k))
    return table, square, expected, square == expected
