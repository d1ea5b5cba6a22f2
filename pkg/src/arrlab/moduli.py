"""Moduli of a fixed lattice: rebuild the arrangement line by line over
polynomials in the free parameters and read off the closure condition.

Four frame lines (no three concurrent in the target) are pinned to
x = 0, y = 0, z = 0, x + y + z = 0, which uses up PGL_3 exactly.  Every later
line either passes through two already-constructed points (no freedom),
through one point (a pencil, one parameter) or through none (two
parameters).  The concurrencies left over once all lines are placed give
polynomial constraints; their gcd is the closure polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .exact import Poly, QuadExt, RatFun, UnsupportedDegree, format_quad, poly_gcd, poly_gcd_all, split_roots, squarefree
from .geometry import Arrangement, EqualLines, ProjLine, incidence_of, normalize_frame
from .lattice import IncidenceStructure, LatticeIso, iter_isomorphisms


class NoFrame(ValueError):
    """No four lines of the target are free of concurrent triples."""


class Infeasible(ValueError):
    """The lattice has no realisation over C."""


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Q (internal)


class MPoly:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict[tuple[int, ...], Fraction], nvars: int):
        self.terms = {e: c for e, c in terms.items() if c}
        self.nvars = nvars

    @classmethod
    def const(cls, c, nvars: int) -> MPoly:
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def var(cls, k: int, nvars: int) -> MPoly:
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): Fraction(1)}, nvars)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: MPoly) -> MPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out, self.nvars)

    def __neg__(self) -> MPoly:
        return MPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def __mul__(self, other: MPoly) -> MPoly:
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out, self.nvars)

    def scale(self, c: Fraction) -> MPoly:
        return MPoly({e: c * v for e, v in self.terms.items()}, self.nvars)

    def evaluate(self, values: Sequence[QuadExt]) -> QuadExt:
        acc = QuadExt(0)
        for e, c in self.terms.items():
            term = QuadExt(c)
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            acc = acc + term
        return acc

    def to_poly(self) -> Poly:
        if self.nvars > 1:
            raise ValueError("not univariate")
        if self.nvars == 0:
            return Poly.const(self.terms.get((), 0))
        deg = max((e[0] for e in self.terms), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            cs[e[0]] = c
        return Poly(cs)

    @classmethod
    def from_poly(cls, p: Poly) -> MPoly:
        return cls({(k,): c.a for k, c in enumerate(p.coeffs)}, 1)


Vec = tuple[MPoly, MPoly, MPoly]


def _cross(u: Vec, v: Vec) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: Vec, v: Vec) -> MPoly:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _is_zero(v: Vec) -> bool:
    return not any(v)


def _reduce(v: Vec) -> Vec:
    """Strip the rational content and, for one variable, the common polynomial factor."""
    nv = v[0].nvars
    if nv == 1:
        ps = [c.to_poly() for c in v]
        g = poly_gcd_all(p for p in ps if p)
        if g.degree > 0:
            ps = [p // g for p in ps]
        v = tuple(MPoly.from_poly(p) for p in ps)  # type: ignore[assignment]
    coeffs = [c for comp in v for c in comp.terms.values()]
    if not coeffs:
        return v
    num = 0
    den = 1
    for c in coeffs:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    lead = next(c for comp in v for _, c in sorted(comp.terms.items()))
    scale = Fraction(den, num) * (1 if lead > 0 else -1)
    return tuple(comp.scale(scale) for comp in v)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# planning


@dataclass(frozen=True)
class PlanSlot:
    line: int
    through: tuple[tuple[int, int], ...]
    """Already-constructed points on this line, each as a pair of placed lines."""

    @property
    def params(self) -> int:
        return max(0, 2 - len(self.through))

    @property
    def closures(self) -> int:
        return max(0, len(self.through) - 2)


@dataclass(frozen=True)
class ConstructionPlan:
    target: IncidenceStructure
    frame: tuple[int, int, int, int]
    slots: tuple[PlanSlot, ...]

    @property
    def residual_parameters(self) -> int:
        return sum(s.params for s in self.slots)

    @property
    def closure_constraints(self) -> int:
        return sum(s.closures for s in self.slots)

    @property
    def order(self) -> tuple[int, ...]:
        return self.frame + tuple(s.line for s in self.slots)

    def to_json(self) -> dict:
        return {
            "frame": list(self.frame),
            "slots": [
                {"line": s.line, "through": [list(p) for p in s.through], "params": s.params}
                for s in self.slots
            ],
            "residual_parameters": self.residual_parameters,
            "closure_constraints": self.closure_constraints,
        }


def valid_frames(target: IncidenceStructure) -> list[tuple[int, int, int, int]]:
    out = []
    for f in itertools.combinations(range(1, target.n + 1), 4):
        if all(len(set(f).intersection(m)) < 3 for m in target.multiples):
            out.append(f)
    return out


def _points_for(target: IncidenceStructure, v: int, rank: dict[int, int]) -> list[tuple[int, int]]:
    pts = []
    for k in target.incident[v]:
        on = sorted((i for i in target.multiples[k] if i in rank), key=rank.__getitem__)
        if len(on) >= 2:
            pts.append((on[0], on[1]))
    return pts


def _best_order(target: IncidenceStructure, frame: Sequence[int]) -> ConstructionPlan:
    """Placement order with the fewest residual parameters after ``frame``.

    How many constructed points a line sees depends only on the set of lines
    already placed, so the minimum is a small DP over subsets.  Among optimal
    choices the line through the most points goes first, then the lowest index.
    """
    rest = tuple(i for i in range(1, target.n + 1) if i not in frame)
    bit = {v: 1 << k for k, v in enumerate(rest)}
    members = [[j for j in m] for m in target.multiples]

    def seen(v: int, mask: int) -> int:
        cnt = 0
        for k in target.incident[v]:
            on = sum(1 for j in members[k] if j in frame or (j in bit and mask & bit[j]))
            cnt += on >= 2
        return cnt

    best: dict[int, int] = {}
    full = (1 << len(rest)) - 1
    for mask in range(full, -1, -1):
        if mask == full:
            best[mask] = 0
            continue
        best[mask] = min(
            max(0, 2 - seen(v, mask)) + best[mask | bit[v]] for v in rest if not mask & bit[v]
        )

    placed = list(frame)
    rank = {line: k for k, line in enumerate(placed)}
    mask = 0
    slots = []
    while mask != full:
        options = []
        for v in rest:
            if mask & bit[v]:
                continue
            k = seen(v, mask)
            if max(0, 2 - k) + best[mask | bit[v]] == best[mask]:
                options.append((-k, v))
        _, v = min(options)
        slots.append(PlanSlot(v, tuple(_points_for(target, v, rank))))
        rank[v] = len(placed)
        placed.append(v)
        mask |= bit[v]
    return ConstructionPlan(target, tuple(frame), tuple(slots))  # type: ignore[arg-type]


def plan_construction(target: IncidenceStructure, frame: Sequence[int] | None = None) -> ConstructionPlan:
    """Placement plan with the fewest residual parameters.

    Without an explicit frame, every valid frame is tried and the first (in
    lexicographic order) reaching the minimum is used.
    """
    if target.n < 4:
        raise NoFrame(f"need at least 4 lines, got {target.n}")
    frames = valid_frames(target)
    if frame is not None:
        frame = tuple(frame)
        if tuple(sorted(frame)) not in frames:
            raise NoFrame(f"{frame} contains a concurrent triple")
        return _best_order(target, frame)
    if not frames:
        raise NoFrame("every four lines contain a concurrent triple")
    return min((_best_order(target, f) for f in frames), key=lambda p: p.residual_parameters)


def all_plans(target: IncidenceStructure, max_params: int | None = None) -> list[ConstructionPlan]:
    plans = [_best_order(target, f) for f in valid_frames(target)]
    if max_params is not None:
        plans = [p for p in plans if p.residual_parameters <= max_params]
    return plans


# ---------------------------------------------------------------------------
# solving


Status = Literal["points", "irreducible_family", "unsupported"]


@dataclass
class ModuliReport:
    status: Status
    plan: ConstructionPlan
    point_count: int = 0
    closure_polynomial: Poly | None = None
    splitting_field_d: int = 1
    free_dimension: int = 0
    degenerate_roots_rejected: int = 0
    realizations: list[Arrangement] = field(default_factory=list)
    roots: list[QuadExt] = field(default_factory=list)
    rejected_roots: list[tuple[QuadExt, str]] = field(default_factory=list)
    automatic_constraints: int = 0
    parametric_lines: list[tuple[RatFun, RatFun, RatFun]] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "point_count": self.point_count,
            "closure_polynomial": (
                None
                if self.closure_polynomial is None
                else [format_quad(c) for c in self.closure_polynomial.coeffs]
            ),
            "splitting_field_d": self.splitting_field_d,
            "free_dimension": self.free_dimension,
            "degenerate_roots_rejected": self.degenerate_roots_rejected,
            "roots": [format_quad(r) for r in self.roots],
            "rejected_roots": [[format_quad(r), why] for r, why in self.rejected_roots],
            "automatic_constraints": self.automatic_constraints,
            "plan": self.plan.to_json(),
            "realizations": [a.to_json() for a in self.realizations],
            "note": self.note,
        }


@dataclass
class _Construction:
    nvars: int
    lines: dict[int, Vec]
    constraints: list[tuple[tuple[int, ...], int, MPoly]]
    nonincidence: list[MPoly]


def _construct(plan: ConstructionPlan) -> _Construction:
    target = plan.target
    nv = plan.residual_parameters

    def const(c) -> MPoly:
        return MPoly.const(c, nv)

    zero, one = const(0), const(1)
    frame_vecs = [(one, zero, zero), (zero, one, zero), (zero, zero, one), (one, one, one)]
    lines: dict[int, Vec] = dict(zip(plan.frame, frame_vecs))
    var = 0
    for slot in plan.slots:
        pts = []
        for a, b in slot.through[:2]:
            p = _cross(lines[a], lines[b])
            if _is_zero(p):
                raise Infeasible(f"lines {a} and {b} are forced to coincide")
            pts.append(p)
        if len(pts) == 2:
            vec = _cross(pts[0], pts[1])
            if _is_zero(vec):
                raise Infeasible(
                    f"points {slot.through[0]} and {slot.through[1]} on line {slot.line} are forced to coincide"
                )
        elif len(pts) == 1:
            # pencil through the point, spanned by the two placed lines meeting there;
            # misses only line b itself, which the target line cannot be
            a, b = slot.through[0]
            t = MPoly.var(var, nv)
            var += 1
            vec = tuple(x + t * y for x, y in zip(lines[a], lines[b]))
        else:
            s, t = MPoly.var(var, nv), MPoly.var(var + 1, nv)
            var += 2
            vec = (one, s, t)
        vec = _reduce(vec)  # type: ignore[arg-type]
        for other, w in lines.items():
            if _is_zero(_cross(vec, w)):
                raise Infeasible(f"line {slot.line} is forced onto line {other}")
        lines[slot.line] = vec

    constraints = []
    points: list[tuple[set[int], Vec]] = []
    for m in target.multiples:
        p = _cross(lines[m[0]], lines[m[1]])
        if _is_zero(p):
            raise Infeasible(f"lines {m[0]} and {m[1]} are forced to coincide")
        for k in m[2:]:
            constraints.append((m, k, _dot(p, lines[k])))
        points.append((set(m), p))
    for i, j in itertools.combinations(range(1, target.n + 1), 2):
        if target.block_of[i][j] < 0:
            points.append(({i, j}, _cross(lines[i], lines[j])))
    nonincidence = []
    for on, p in points:
        for k in range(1, target.n + 1):
            if k not in on:
                nonincidence.append(_dot(p, lines[k]))
    return _Construction(nv, lines, constraints, nonincidence)


def _evaluate_lines(con: _Construction, values: Sequence[QuadExt], n: int) -> list[tuple[QuadExt, ...]]:
    return [tuple(c.evaluate(values) for c in con.lines[i]) for i in range(1, n + 1)]


def _realize(con: _Construction, values: Sequence[QuadExt], target: IncidenceStructure) -> tuple[Arrangement | None, str]:
    vecs = _evaluate_lines(con, values, target.n)
    if any(not any(v) for v in vecs):
        return None, "collapsed construction"
    d = 1
    for v in values:
        if v.d != 1:
            d = v.d
    try:
        arr = Arrangement(vecs, d)
    except EqualLines:
        return None, "coincident lines"
    got = incidence_of(arr)
    if got != target:
        return arr, "extra incidences"
    return arr, ""


def _sample_point(con: _Construction, target: IncidenceStructure) -> Arrangement:
    nv = con.nvars
    for radius in range(2, 12):
        for vals in itertools.product(range(-radius, radius + 1), repeat=nv):
            if max(map(abs, vals)) != radius:
                continue
            q = [QuadExt(v) for v in vals]
            if all(n.evaluate(q) for n in con.nonincidence):
                arr, why = _realize(con, q, target)
                if arr is not None and not why:
                    return arr
    raise RuntimeError("no non-degenerate sample point found in the search box")


def solve_moduli(target: IncidenceStructure, plan: ConstructionPlan | None = None) -> ModuliReport:
    """Count the moduli points of ``target`` (one residual parameter at most).

    Raises :class:`Infeasible` when no realisation survives and
    :class:`~arrlab.exact.UnsupportedDegree` when the non-degenerate part of
    the closure polynomial does not split into factors of degree <= 2.
    """
    if plan is None:
        plan = plan_construction(target)
    con = _construct(plan)
    if any(not n for n in con.nonincidence):
        raise Infeasible("an extra incidence holds identically on the construction")
    nonzero = [c for _, _, c in con.constraints if c]
    automatic = len(con.constraints) - len(nonzero)
    nv = con.nvars

    if not nonzero:
        if nv == 0:
            arr, why = _realize(con, [], target)
            if why:
                raise Infeasible(why)
            return ModuliReport(
                "points", plan, point_count=1, closure_polynomial=Poly.const(1),
                realizations=[arr], automatic_constraints=automatic,
            )
        return ModuliReport(
            "irreducible_family", plan, free_dimension=nv,
            realizations=[_sample_point(con, target)], automatic_constraints=automatic,
            parametric_lines=_parametric(con, target.n) if nv == 1 else [],
            note="every closure constraint vanishes identically",
        )

    if nv == 0:
        raise Infeasible("a constant closure constraint is nonzero")
    if nv == 2:
        return _two_parameter(con, plan, target, nonzero, automatic)
    if nv > 2:
        return ModuliReport(
            "unsupported", plan, free_dimension=nv, automatic_constraints=automatic,
            note=f"{nv} residual parameters with non-trivial closure constraints",
        )

    closure = squarefree(poly_gcd_all(c.to_poly() for c in nonzero))
    if closure.degree <= 0:
        raise Infeasible("closure constraints have no common root")
    good = closure
    for n in con.nonincidence:
        g = poly_gcd(good, n.to_poly())
        if g.degree > 0:
            good = good // g
        if good.degree <= 0:
            break
    degenerate = closure // good

    report = ModuliReport(
        "points", plan, closure_polynomial=closure,
        automatic_constraints=automatic,
        degenerate_roots_rejected=degenerate.degree,
        parametric_lines=_parametric(con, target.n),
    )
    if degenerate.degree > 0:
        droots, _, _ = split_roots(degenerate)
        for r in droots:
            _, why = _realize(con, [r], target)
            report.rejected_roots.append((r, why or "extra incidences"))
    if good.degree <= 0:
        raise Infeasible("every root of the closure polynomial is degenerate")
    roots, d, rest = split_roots(good)
    if rest.degree > 0:
        raise UnsupportedDegree(f"closure factor {rest} of degree {rest.degree} not split")
    for r in roots:
        arr, why = _realize(con, [r], target)
        if why:
            report.rejected_roots.append((r, why))
            report.degenerate_roots_rejected += 1
            continue
        report.roots.append(r)
        report.realizations.append(arr)
    if not report.realizations:
        raise Infeasible("no root survives verification")
    report.point_count = len(report.realizations)
    report.splitting_field_d = d
    return report


def _to_sympy(p: MPoly, gens):
    import sympy

    return sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}, *gens)


def _two_parameter(
    con: _Construction, plan: ConstructionPlan, target: IncidenceStructure,
    nonzero: list[MPoly], automatic: int,
) -> ModuliReport:
    """Two parameters, non-trivial constraints: look for a single rational curve.

    The common factor of the constraints is split over Q; factors dividing a
    non-incidence polynomial only carry degenerate arrangements.  A single
    surviving factor of degree one in some parameter is a rational, hence
    irreducible, curve.  Common zeros off that curve form a finite set and are
    not examined.
    """
    import sympy

    s, t = sympy.symbols("s t")
    gens = (s, t)
    g = _to_sympy(nonzero[0], gens)
    for c in nonzero[1:]:
        g = sympy.gcd(g, _to_sympy(c, gens))
    unsupported = ModuliReport(
        "unsupported", plan, free_dimension=2, automatic_constraints=automatic,
        note="two residual parameters; the constraints do not cut out one rational curve",
    )
    if g.total_degree() <= 0:
        return unsupported
    nonincidence = [_to_sympy(n, gens) for n in con.nonincidence]
    good = []
    for h, _ in sympy.factor_list(g)[1]:
        if h.total_degree() <= 0:
            continue
        if any(sympy.rem(n, h).is_zero for n in nonincidence):
            continue
        good.append(h)
    if not good:
        raise Infeasible("every component of the constraint curve is degenerate")
    if len(good) > 1:
        return unsupported
    h = good[0]
    for k, var in enumerate(gens):
        if h.degree(var) == 1:
            break
    else:
        return unsupported
    other = gens[1 - k]
    a = sympy.Poly(h.as_expr().coeff(var, 1), other)
    b = sympy.Poly(h.as_expr().coeff(var, 0), other)
    if sympy.gcd(a, b).degree() > 0:
        return unsupported
    for r in range(1, 40):
        for u in (r, -r, sympy.Rational(1, r + 1), -sympy.Rational(1, r + 1)):
            if a.eval(u) == 0:
                continue
            w = -b.eval(u) / a.eval(u)
            vals = [u, w] if k == 1 else [w, u]
            q = [QuadExt(Fraction(int(sympy.numer(v)), int(sympy.denom(v)))) for v in vals]
            arr, why = _realize(con, q, target)
            if arr is not None and not why:
                return ModuliReport(
                    "irreducible_family", plan, free_dimension=1, realizations=[arr],
                    automatic_constraints=automatic,
                    note=f"rational curve {h.as_expr()} = 0 in the two parameters",
                )
    raise RuntimeError("no non-degenerate point found on the constraint curve")


def _parametric(con: _Construction, n: int) -> list[tuple[RatFun, RatFun, RatFun]]:
    out = []
    for i in range(1, n + 1):
        ps = [c.to_poly() for c in con.lines[i]]
        lead = next(p for p in ps if p)
        out.append(tuple(RatFun(p, lead) for p in ps))
    return out


def moduli_verdict(target: IncidenceStructure) -> str:
    """One-word realisability verdict used in census reports."""
    try:
        rep = solve_moduli(target)
    except Infeasible:
        return "infeasible"
    except UnsupportedDegree:
        return "unsupported"
    except NoFrame:
        return "unsupported"
    if rep.status == "points":
        return f"points:{rep.point_count}:d={rep.splitting_field_d}"
    return rep.status


# ---------------------------------------------------------------------------
# projective equivalence


def _frame_of(s: IncidenceStructure) -> tuple[int, ...]:
    frames = valid_frames(s)
    if not frames:
        raise NoFrame("no four lines without a concurrent triple")
    return frames[0]


def realizations_equivalent(a: Arrangement, b: Arrangement, permute: bool = True) -> bool:
    """Is there a projective transformation (and, with ``permute``, a line
    relabelling preserving the lattice) taking ``a`` onto ``b``?

    With ``permute=False`` the labels are kept, which is equality of moduli
    points.  Both sides are normalised to the standard frame, so no
    arithmetic ever mixes their fields.
    """
    if len(a) != len(b):
        return False
    sa, sb = incidence_of(a), incidence_of(b)
    frame = _frame_of(sa)
    na = normalize_frame(a, frame)
    if permute:
        isos: Iterable[LatticeIso] = iter_isomorphisms(sa, sb)
    else:
        isos = [LatticeIso(tuple(range(1, len(a) + 1)))] if sa == sb else []
    for iso in isos:
        nb = normalize_frame(b, [iso(f) for f in frame])
        if all(na[k - 1] == nb[iso(k) - 1] for k in range(1, len(a) + 1)):
            return True
    return False
