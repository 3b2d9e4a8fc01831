"""Ambiskew polynomial rings over the catalog coefficient algebras.

Given a coefficient algebra A, an automorphism alpha, a normal element v
and a nonzero scalar rho, the ring adjoins two generators y and x subject
to

    y*a = alpha(a)*y,   x*a = beta(a)*x,   x*y = rho*y*x + v,

where gamma is the automorphism induced by v through v*a = gamma(a)*v and
beta = gamma o alpha^{-1}.  The construction demands that alpha and gamma
commute and that gamma fixes v; violations are reported by name.

Elements are kept in the normal form sum x^i * a_ij * y^j, stored flat as
a sparse dict from (i, j, basis key) to scalars so that the element
plumbing shared by the coefficient families applies unchanged.  The single
rewrite behind multiplication is y*x -> rho^{-1}*(x*y - v); repeated
y-powers are folded through the closed form for y^t * x, which brings in
the elements v_m defined by v_0 = 0 and v_{m+1} = v + rho*alpha(v_m).

The ring implements the same interface as the coefficient families, so a
constructed ring can serve as the coefficient algebra of the next one.

>>> from .scalars import ScalarContext
>>> from .algebras import PolyAlgebra, AffineAuto
>>> ctx = ScalarContext()
>>> A = PolyAlgebra(ctx)
>>> shift = AffineAuto(ctx.one, ctx.one)
>>> weyl = AmbiskewRing(A, shift, A.one, ctx.one)
>>> weyl.render(weyl.mul(weyl.gen_elem("x"), weyl.gen_elem("y")))
'1 + x*y'
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .algebras import (
    AffineAuto,
    BaseAlgebra,
    DiagonalAuto,
    NestedAuto,
    UnitAnswer,
    _eadd,
    _escale,
    _render_terms,
    normalizing_auto,
    scalar_ratio,
    solve_splitting_ex,
)
from .scalars import Scalar, root_of_unity_order
from .verdict import Status, Verdict, fails, holds, inconclusive


class Conformality(NamedTuple):
    """Whether v splits as u - rho*alpha(u) for an admissible u.

    HOLDS carries the splitting element and the Casimir element
    z = x*y - u; FAILS means no admissible u exists (the quadruple is
    singular) and detail names the obstruction; INCONCLUSIVE marks an
    honest refusal to decide.
    """

    status: Status
    u: dict | None
    casimir: dict | None
    detail: dict | None


def diagonal_auto(algebra, scales: dict):
    """Build the family-appropriate automorphism from per-generator scales."""
    if algebra.kind == "ambiskew":
        base = diagonal_auto(algebra.base, scales)
        return NestedAuto(base, scales[algebra.y_name], scales[algebra.x_name])
    if algebra.kind == "poly":
        return AffineAuto(scales[algebra.gen], algebra.ctx.zero)
    return DiagonalAuto(tuple(scales[g] for g in algebra.gens()))


class AmbiskewRing(BaseAlgebra):
    """R(A, alpha, v, rho) in the shared coefficient-algebra interface."""

    kind = "ambiskew"

    def __init__(self, base, alpha, v: dict, rho: Scalar,
                 y_name: str = "y", x_name: str = "x"):
        if rho.is_zero():
            raise ValueError("the twist rho must be a nonzero scalar")
        base.validate_auto(alpha)
        if y_name == x_name or y_name in base.gens() or x_name in base.gens():
            raise ValueError("the names of y and x must be distinct from each "
                             "other and from the coefficient generators")
        gamma = normalizing_auto(base, v)
        if gamma is None:
            raise ValueError("v is not normal: no diagonal automorphism gamma "
                             "satisfies v*a = gamma(a)*v")
        if not base.auto_equal(base.compose(alpha, gamma),
                               base.compose(gamma, alpha)):
            raise ValueError("alpha must commute with the automorphism "
                             "induced by v")
        if not base.eq(base.apply(gamma, v), v):
            raise ValueError("the automorphism induced by v must fix v")
        self.base = base
        self.ctx = base.ctx
        self.alpha = alpha
        self.alpha_inv = base.invert(alpha)
        self.gamma = gamma
        self.beta = base.compose(gamma, self.alpha_inv)
        self.beta_inv = base.invert(self.beta)
        self.v = dict(v)
        self.rho = rho
        self.y_name = y_name
        self.x_name = x_name
        self._onekey = next(iter(base.one))
        self._vm: list[dict] = [{}]
        self._conf: Conformality | None = None

    # elements -----------------------------------------------------------

    def from_scalar(self, s: Scalar) -> dict:
        return {} if s.is_zero() else {(0, 0, self._onekey): s}

    def embed(self, c: dict) -> dict:
        """The coefficient element c as a ring element."""
        return self._flat(0, 0, c)

    def coefficient(self, a: dict, i: int, j: int) -> dict:
        """The coefficient of x^i ... y^j in a, as a coefficient element."""
        return {bk: s for (i_, j_, bk), s in a.items() if (i_, j_) == (i, j)}

    def grouped(self, a: dict) -> dict[tuple[int, int], dict]:
        """The element as a map from (i, j) to coefficient elements."""
        out: dict[tuple[int, int], dict] = {}
        for (i, j, bk), s in a.items():
            out.setdefault((i, j), {})[bk] = s
        return out

    def homogeneous_components(self, a: dict) -> dict[int, dict]:
        """Split along the grading that gives y degree 1 and x degree -1."""
        out: dict[int, dict] = {}
        for key, s in a.items():
            i, j = key[0], key[1]
            out.setdefault(j - i, {})[key] = s
        return out

    def _flat(self, i: int, j: int, c: dict) -> dict:
        return {(i, j, bk): s for bk, s in c.items()}

    def _key_order(self, key):
        i, j, bk = key
        return (i, j, self.base._key_order(bk))

    # generators ----------------------------------------------------------

    def gens(self) -> tuple[str, ...]:
        return self.base.gens() + (self.y_name, self.x_name)

    def gen_elem(self, name: str) -> dict:
        if name == self.y_name:
            return {(0, 1, self._onekey): self.ctx.one}
        if name == self.x_name:
            return {(1, 0, self._onekey): self.ctx.one}
        return self.embed(self.base.gen_elem(name))

    # multiplication ------------------------------------------------------

    def v_m(self, m: int) -> dict:
        """v_0 = 0, v_{m+1} = v + rho*alpha(v_m), as coefficient elements."""
        while len(self._vm) <= m:
            prev = self._vm[-1]
            step = self.base.smul(self.rho, self.base.apply(self.alpha, prev))
            self._vm.append(self.base.add(self.v, step))
        return dict(self._vm[m])

    def _times_x(self, f: dict) -> dict:
        # (x^s c y^t) * x = rho^-t * (x^{s+1} beta^{-1}(c) y^t - x^s c v_t y^{t-1})
        out: dict = {}
        rinv = self.rho.inv()
        for (s, t), c in self.grouped(f).items():
            scale = rinv ** t
            lead = self.base.smul(scale, self.base.apply(self.beta_inv, c))
            out = _eadd(out, self._flat(s + 1, t, lead))
            if t:
                tail = self.base.smul(-scale, self.base.mul(c, self.v_m(t)))
                out = _eadd(out, self._flat(s, t - 1, tail))
        return out

    def _times_coeff(self, f: dict, b: dict) -> dict:
        # (x^s c y^t) * b = x^s (c * alpha^t(b)) y^t
        if not b or not f:
            return {}
        groups = self.grouped(f)
        images = [b]
        for _ in range(max(t for (_s, t) in groups)):
            images.append(self.base.apply(self.alpha, images[-1]))
        out: dict = {}
        for (s, t), c in groups.items():
            out = _eadd(out, self._flat(s, t, self.base.mul(c, images[t])))
        return out

    def mul(self, f: dict, g: dict) -> dict:
        out: dict = {}
        fx = [f]
        for (k, l), b in sorted(self.grouped(g).items()):
            while len(fx) <= k:
                fx.append(self._times_x(fx[-1]))
            part = self._times_coeff(fx[k], b)
            if l:
                part = {(i, j + l, bk): s for (i, j, bk), s in part.items()}
            out = _eadd(out, part)
        return out

    # automorphisms ------------------------------------------------------

    def identity_auto(self) -> NestedAuto:
        return NestedAuto(self.base.identity_auto(), self.ctx.one, self.ctx.one)

    def validate_auto(self, auto) -> None:
        if not isinstance(auto, NestedAuto):
            raise ValueError("ring automorphisms pair a coefficient "
                             "automorphism with scales for y and x")
        self.base.validate_auto(auto.base)
        if auto.lam_y.is_zero() or auto.lam_x.is_zero():
            raise ValueError("the scales of y and x must be nonzero")
        b = self.base
        if not b.auto_equal(b.compose(auto.base, self.alpha),
                            b.compose(self.alpha, auto.base)):
            raise ValueError("the coefficient part must commute with alpha")
        if not b.auto_equal(b.compose(auto.base, self.gamma),
                            b.compose(self.gamma, auto.base)):
            raise ValueError("the coefficient part must commute with gamma")
        if not b.eq(b.apply(auto.base, self.v),
                    b.smul(auto.lam_y * auto.lam_x, self.v)):
            raise ValueError("the coefficient part must scale v by the "
                             "product of the scales of y and x")

    def apply(self, auto, a: dict) -> dict:
        out: dict = {}
        for (i, j), c in self.grouped(a).items():
            img = self.base.apply(auto.base, c)
            img = self.base.smul(auto.lam_x ** i * auto.lam_y ** j, img)
            out = _eadd(out, self._flat(i, j, img))
        return out

    def compose(self, f, g):
        return NestedAuto(self.base.compose(f.base, g.base),
                          f.lam_y * g.lam_y, f.lam_x * g.lam_x)

    def invert(self, auto):
        return NestedAuto(self.base.invert(auto.base),
                          auto.lam_y.inv(), auto.lam_x.inv())

    def auto_order(self, auto) -> int | None:
        k0 = self.base.auto_order(auto.base)
        ky = root_of_unity_order(auto.lam_y)
        kx = root_of_unity_order(auto.lam_x)
        if k0 is None or ky is None or kx is None:
            return None
        return math.lcm(k0, ky, kx)

    def eigenvalue(self, auto, key) -> Scalar | None:
        i, j, bk = key
        lam = self.base.eigenvalue(auto.base, bk)
        if lam is None:
            return None
        return lam * auto.lam_y ** j * auto.lam_x ** i

    def _normalizing_auto(self, v: dict):
        if not v:
            return self.identity_auto()
        scales: dict[str, Scalar] = {}
        for name in self.gens():
            g = self.gen_elem(name)
            lam = scalar_ratio(self, self.mul(v, g), self.mul(g, v))
            if lam is None or lam.is_zero():
                return None
            scales[name] = lam
        auto = diagonal_auto(self, scales)
        try:
            self.validate_auto(auto)
        except ValueError:
            return None
        return auto

    # structure ----------------------------------------------------------

    def is_domain(self) -> bool | None:
        return self.base.is_domain()

    def v_eigenvalue(self) -> Scalar | None:
        """mu with alpha(v) = mu*v, or None if v is not an eigenvector."""
        if not self.v:
            return self.ctx.one
        return scalar_ratio(self.base, self.base.apply(self.alpha, self.v),
                            self.v)

    def w_element(self) -> dict:
        """The product x*y, whose commutation action on A is gamma."""
        return {(1, 1, self._onekey): self.ctx.one}

    def w_alpha_power(self, m: int) -> dict:
        """The image of w = x*y under the m-th power of the extension of
        alpha determined by alpha(w) = rho^{-1}*(w - v)."""
        base = self.base
        sigma = self.rho ** (-m)
        if m >= 0:
            c = base.smul(-sigma, self.v_m(m))
        else:
            c: dict = {}
            scale = self.ctx.one
            for _ in range(-m):
                c = base.add(base.apply(self.alpha_inv, c),
                             base.smul(scale, base.apply(self.alpha_inv, self.v)))
                scale = scale * self.rho
        return _eadd(self._flat(1, 1, base.from_scalar(sigma)),
                     self._flat(0, 0, c))

    def conformality(self) -> Conformality:
        """Decide whether v = u - rho*alpha(u) has an admissible solution."""
        if self._conf is None:
            u, detail, complete = solve_splitting_ex(
                self.base, self.alpha, self.gamma, self.v, self.rho)
            if u is not None:
                z = self.sub(self.w_element(), self.embed(u))
                self._conf = Conformality(Status.HOLDS, u, z, None)
            elif complete:
                self._conf = Conformality(Status.FAILS, None, None, detail)
            else:
                self._conf = Conformality(Status.INCONCLUSIVE, None, None, detail)
        return self._conf

    def extend_autos(self, lam: Scalar, mu: Scalar | None = None):
        """Extensions of alpha and gamma to the ring itself.

        Requires v to be an eigenvector of alpha; mu is its eigenvalue and
        is recomputed when not supplied.  The extension sends y to lam*y
        and x to (mu/lam)*x; the companion extension of gamma sends y to
        rho*y and x to rho^{-1}*x.  Both are validated against the
        defining relations before they are returned.
        """
        if lam.is_zero():
            raise ValueError("the scale of y must be nonzero")
        if mu is None:
            mu = self.v_eigenvalue()
            if mu is None:
                raise ValueError("v is not an eigenvector of alpha")
        elif not self.base.eq(self.base.apply(self.alpha, self.v),
                              self.base.smul(mu, self.v)):
            raise ValueError("alpha does not scale v by the supplied mu")
        alpha_ext = NestedAuto(self.alpha, lam, mu / lam)
        gamma_ext = NestedAuto(self.gamma, self.rho, self.rho.inv())
        self.validate_auto(alpha_ext)
        self.validate_auto(gamma_ext)
        return alpha_ext, gamma_ext

    # decision hooks -------------------------------------------------------

    def is_unit(self, a: dict, mask=None) -> UnitAnswer:
        if not a:
            return UnitAnswer(Status.FAILS, None, {"kind": "zero"})
        if any(k[0] or k[1] for k in a):
            if self.is_domain():
                return UnitAnswer(Status.FAILS, None,
                                  {"kind": "nonconstant_in_domain"})
            return UnitAnswer(Status.INCONCLUSIVE, None, None)
        ans = self.base.is_unit(self.coefficient(a, 0, 0), mask=mask)
        if ans.status is Status.HOLDS:
            return UnitAnswer(Status.HOLDS, self.embed(ans.inverse),
                              ans.certificate)
        return ans

    def is_regular(self, a: dict) -> UnitAnswer:
        if not a:
            return UnitAnswer(Status.FAILS, None, {"kind": "zero"})
        if any(k[0] or k[1] for k in a):
            if self.is_domain():
                return UnitAnswer(Status.HOLDS, None, None)
            return UnitAnswer(Status.INCONCLUSIVE, None, None)
        return self.base.is_regular(self.coefficient(a, 0, 0))

    def alpha_simple(self, autos: list) -> Verdict:
        from .simplicity import ring_alpha_simple
        return ring_alpha_simple(self, autos)

    def radical_contains(self, d: dict, u: dict) -> Verdict:
        if self.is_unit(d).status is Status.HOLDS:
            return holds("the ideal is everything", certificate={"power": 0})
        if self.is_zero(u):
            return holds("u is zero", certificate={"power": 1})
        if self.is_zero(d) and self.is_domain():
            return fails("the ideal is zero but u is not, and the ring "
                         "has no nilpotents")
        return inconclusive("radical membership is only decided against "
                            "units and zero in an iterated ring")

    def comaximal(self, a: dict, b: dict) -> Verdict:
        if self.is_unit(a).status is Status.HOLDS or \
                self.is_unit(b).status is Status.HOLDS:
            return holds("one element is a unit")
        if self.is_zero(a) and self.is_zero(b):
            return fails("both elements are zero")
        return inconclusive("comaximality in an iterated ring is only "
                            "decided through units")

    def first_nonunit_in_pencil(self, p: dict, b: dict, q0: int, mask=None) -> int | None:
        if all(k[0] == 0 and k[1] == 0 for k in p) and \
                all(k[0] == 0 and k[1] == 0 for k in b):
            return self.base.first_nonunit_in_pencil(
                self.coefficient(p, 0, 0), self.coefficient(b, 0, 0), q0,
                mask=mask)
        if not self.is_domain():
            raise ValueError("pencil membership is undecided over a "
                             "coefficient tower with zero divisors")
        if self.ctx.characteristic:
            return self._pencil_mod_p(p, b, q0, mask=mask)
        # a unit needs every coefficient outside (0, 0) to cancel, which
        # pins q to at most one value
        for q in (q0, q0 + 1):
            elem = _eadd(_escale(p, self.ctx.int_(q)), b)
            if self.is_unit(elem).status is not Status.HOLDS:
                return q
        raise AssertionError("unreachable: two consecutive unit values in a "
                             "pencil with terms outside bidegree (0, 0)")

    # presentation ---------------------------------------------------------

    def render(self, a: dict) -> str:
        if not a:
            return "0"
        parts: list[tuple[Scalar, str]] = []
        for (i, j) in sorted(self.grouped(a)):
            c = self.coefficient(a, i, j)
            factors = []
            if i:
                factors.append(self.x_name if i == 1 else f"{self.x_name}^{i}")
            s = self.base.scalar_of(c)
            if s is None:
                factors.append(f"({self.base.render(c)})")
                s = self.ctx.one
            if j:
                factors.append(self.y_name if j == 1 else f"{self.y_name}^{j}")
            parts.append((s, "*".join(factors)))
        return _render_terms(parts)

    def describe(self) -> dict:
        return {
            "family": "Ambiskew",
            "base": self.base.describe(),
            "alpha": self.base.describe_auto(self.alpha),
            "v": self.base.render(self.v),
            "rho": str(self.rho),
            "y": self.y_name,
            "x": self.x_name,
        }
