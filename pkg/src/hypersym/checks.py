"""Structural checks over the catalog.

Hardy-type invariant forms, coset-word replays and compositions, term-order
reversals, n = 1 degenerations, prefactor canonicalisation and the
resolution of ambiguous printed tokens.  Symbolic comparisons work on the
linear forms of the images, reduced modulo the balancing condition and
sorted within the groups of slots the series is symmetric in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .brackets import BracketClass, EllipticParams
from .catalog import (
    RAW,
    READINGS,
    TransformIdentity,
    apply,
    MAX_BUDGET,
    build,
    conditioned,
    map_point,
    lookup,
    moves,
    residual,
    verify,
)
from .errors import PoleError
from .forms import LinearForm, lf
from .groups import parse_word
from .prefactor import Prefactor, canonicalize, evaluate_prefactor
from .sampling import Bounds, SamplingError, admissible, draw_point, stream
from .series import an_4f3_term, enm_term, Series4F3An, SeriesEnm
from .shapes import SHAPES, ParamVector

DEFAULT_EP = EllipticParams()


def elliptic_params(j: int, base: EllipticParams = DEFAULT_EP) -> EllipticParams:
    """Sample j uses the configured bracket, then the trigonometric and rational ones in turn."""
    cls = (base.bracket, BracketClass.trigonometric(), BracketClass.rational())[j % 3]
    return EllipticParams(base.delta, cls)


@dataclass
class CheckRow:
    check: str
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status in ("pass", "UNIQUE")

    def to_json(self):
        return {"check": self.check, "name": self.name, "status": self.status, **self.detail}


def _close(a, b, exact, tol):
    if exact:
        return a == b
    return residual(a, b) < tol


# -- symbolic images ----------------------------------------------------------------------


def reduce_form(form: LinearForm, shape: str) -> LinearForm:
    """Eliminate the shape's solved slot with its balancing condition."""
    sh = SHAPES[shape]
    if sh.balancing is None or sh.solve is None:
        return form
    bal = sh.balancing
    c = bal.coefficient(sh.solve)
    rest = LinearForm(tuple((s, -v / c) for s, v in bal.coeffs if s != sh.solve), -bal.const / c)
    return form.substitute({sh.solve: rest})


@dataclass(frozen=True)
class SymbolicImage:
    shape: str
    slots: dict
    x: LinearForm | None

    def key(self):
        sh = SHAPES[self.shape]
        red = {s: reduce_form(f, self.shape) for s, f in self.slots.items()}
        grouped = {s for g in sh.symmetric for s in g}
        out = [(s, str(red[s])) for s in sh.slots if s not in grouped]
        for g in sh.symmetric:
            out.append((g, tuple(sorted(str(red[s]) for s in g))))
        if self.x is not None:
            out.append(("x", str(reduce_form(self.x, self.shape))))
        return tuple(out)


def identity_image(shape: str) -> SymbolicImage:
    has_x = any(name == "x" for name, _ in SHAPES[shape].lists)
    return SymbolicImage(shape, {s: lf(s) for s in SHAPES[shape].slots}, lf("x_i") if has_x else None)


def push(img: SymbolicImage, move: TransformIdentity) -> SymbolicImage:
    """Image after applying ``move`` to the point described by ``img``."""
    if move.target != move.shape:
        raise ValueError("symbolic composition needs shape-preserving moves")
    mapping = dict(img.slots)
    if img.x is not None:
        mapping["x_i"] = img.x
    slots = {s: f.substitute(mapping) for s, f in move.slots}
    rules = dict(move.lists)
    x = img.x
    if "x" in rules:
        (part,) = rules["x"].parts
        x = part.substitute(mapping)
    return SymbolicImage(img.shape, slots, x)


def compose(seq, shape) -> SymbolicImage:
    """Symbolic image of applying the moves in ``seq`` in order (first acts first)."""
    img = identity_image(shape)
    for mv in seq:
        img = push(img, mv)
    return img


def permutation_move(shape: str, perm: dict, name: str = "perm") -> TransformIdentity:
    raw = dict(name=name, family=shape, shape=shape, kind="move",
               image={a: b for a, b in perm.items() if a != b})
    return build(raw)


def symmetric_permutations(shape: str):
    """Every permutation within the shape's symmetric slot groups, as dicts."""
    groups = SHAPES[shape].symmetric
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = {}
        for g, img in zip(groups, combo):
            perm.update(dict(zip(g, img)))
        yield perm


# -- numeric replay ---------------------------------------------------------------------


def replay(seq, p: ParamVector, ep=None):
    """Apply moves in order numerically; returns (final point, accumulated prefactor)."""
    total = Fraction(1) if SHAPES[p.shape].exact else 1 + 0j
    for mv in seq:
        app = apply(mv, p, ep)
        total = total * app.prefactor
        p = app.image
    return p, total


def word_sequence(word, shape) -> list:
    """Moves of a matrix word, in application order (rightmost acts first)."""
    mv = moves(shape)
    return [mv[g] for g in reversed(parse_word(word))]


def _sample(shape, seed, label, j, check, ep=None, **kw):
    rng = stream(seed, label, j)
    b = kw.pop("bounds", Bounds())
    return admissible(lambda: draw_point(shape, rng, b, ep, **kw), check)


def certify_sequence(label, seq, target: TransformIdentity, seed=0, samples=20, tol=1e-8,
                     ep_base=DEFAULT_EP, check="composition"):
    """Symbolic image match plus numeric prefactor and evaluated-identity match."""
    shape = target.shape
    sym_ok = compose(seq, shape).key() == compose([target], shape).key()
    exact = SHAPES[shape].exact
    worst = 0.0
    bad = 0
    for j in range(samples):
        ep = None if exact else elliptic_params(j, ep_base)

        def run(p):
            lhs = conditioned(p, ep).value
            q, pf = replay(seq, p, ep)
            rhs = pf * conditioned(q, ep).value
            direct = apply(target, p, ep).prefactor
            return lhs, rhs, pf, direct

        try:
            _, (lhs, rhs, pf, direct), _ = _sample(shape, seed, label, j, run, ep)
        except SamplingError:
            bad += 1
            continue
        if not (_close(lhs, rhs, exact, tol) and _close(pf, direct, exact, tol)):
            bad += 1
        if not exact:
            worst = max(worst, residual(lhs, rhs), residual(pf, direct))
    ok = sym_ok and bad == 0
    detail = {"target": target.name, "symbolic_match": sym_ok, "samples": samples, "failures": bad}
    if not exact:
        detail["worst_residual"] = worst
    return CheckRow(check, label, "pass" if ok else "fail", detail)


# coset words (matrix convention) that realise the composite identities
COSET_WORDS = [
    ("F4", "s t1 r1 s", "d1rst1"),
    ("F4", "s t1 t2 r1 r2 s t1 r1 s", "d1r1"),
    ("F4_Rect", "s1 s2 s1", "ias1"),
    ("F4_Rect", "s1 s0 s1", "ias3"),
    ("F4_Rect", "s1 s0 s2 s1", "iars2"),
    ("F4_Rect", "s1 s2 s1 s0 s1", "iars1"),
    ("F4_Rect", "s1 s0 s1 s2 s1", "iars3"),
    ("F4_Rect", "s1 s0 s2 s1 s0 s2 s1", "iara"),
    ("F4_Tri", "s1 s2 s1", "las1"),
]


def find_composition(first: TransformIdentity, second: TransformIdentity, target: TransformIdentity):
    """Search a symmetry h with  second . h . first  equal to target (symbolically)."""
    shape = target.shape
    want = compose([target], shape).key()
    for perm in symmetric_permutations(shape):
        h = permutation_move(shape, perm)
        if compose([first, h, second], shape).key() == want:
            return perm
    return None


def verify_composition_consistency(seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP) -> list[CheckRow]:
    rows = []
    # (a) the tau_3 formula applied twice, with a relabelling in between, gives the Bailey one
    for first, second, target in (("mn1EBDT1", "mn1EBDT1", "EBaileyT1"), ("LKN", "LMN", "LMNKN"),
                                  ("LMN", "LKN", "LMNKN")):
        t1, t2, tt = lookup(first), lookup(second), lookup(target)
        perm = find_composition(t1, t2, tt)
        label = f"{second}.h.{first}"
        if perm is None:
            rows.append(CheckRow("composition", label, "fail", {"target": target, "reason": "no relabelling h found"}))
            continue
        h = permutation_move(tt.shape, perm)
        row = certify_sequence(label, [t1, h, t2], tt, seed, samples, tol, ep_base)
        row.detail["h"] = {k: v for k, v in perm.items() if k != v}
        rows.append(row)
    # (b) coset-word replays
    for shape, word, target in COSET_WORDS:
        rows.append(certify_sequence(f"{shape}:{word}", word_sequence(word, shape), lookup(target), seed,
                                     samples, tol, ep_base, check="coset_word"))
    # (c) order reversals
    for name in ("ad1r1", "iar", "BaileyT4", "T31"):
        rows.append(check_reversal(lookup(name), seed, samples, tol, ep_base))
    # the involutions: Bailey maps applied twice are the identity on parameters
    for name in ("EBaileyT1", "iar", "KN"):
        t = lookup(name)
        ok = compose([t, t], t.shape).key() == identity_image(t.shape).key()
        rows.append(CheckRow("involution", name, "pass" if ok else "fail", {}))
    return rows


# -- reversal ---------------------------------------------------------------------------------


def _f4_term(p, k):
    from .brackets import pochhammer
    v = p.values
    num = pochhammer(-p.N, k) * pochhammer(v["a1"], k) * pochhammer(v["a2"], k) * pochhammer(v["a3"], k)
    den = pochhammer(1, k) * pochhammer(v["d1"], k) * pochhammer(v["d2"], k) * pochhammer(v["d3"], k)
    return num / den


def _e10_term(p, k, ep):
    from .brackets import bracket_factorial
    v = p.values
    s = v["s"]
    params = [v[f"c{j}"] for j in range(6)] + [-p.N * ep.delta]
    out = ep.br(s + 2 * k * ep.delta) / ep.br(s) * bracket_factorial(s, k, ep) / bracket_factorial(ep.delta, k, ep)
    for u in params:
        out *= bracket_factorial(u, k, ep) / bracket_factorial(ep.delta + s - u, k, ep)
    return out


def term(p: ParamVector, gamma, ep=None):
    v = p.values
    if p.shape == "F4":
        return _f4_term(p, gamma[0])
    if p.shape == "E10":
        return _e10_term(p, gamma[0], ep)
    if p.shape == "F4_Rect":
        spec = Series4F3An.rectangular(p.lists["m"], p.lists["x"], v["a1"], v["a2"], v["e1"], v["e2"], v["c"], v["d"])
        return an_4f3_term(spec, gamma)
    if p.shape == "Enm_Rect":
        spec = SeriesEnm.rectangular(p.lists["m"], p.lists["x"], v["s"], (v["c0"], v["c1"], v["c2"]),
                                     (v["d0"], v["d1"], v["d2"]), ep)
        return enm_term(spec, gamma)
    raise ValueError(f"no term function for {p.shape}")


def _bounds_of(p: ParamVector):
    if "m" in p.lists:
        return tuple(p.lists["m"])
    return (p.N,)


def check_reversal(t: TransformIdentity, seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP) -> CheckRow:
    """Termwise: term(p, m - gamma) = P(p) * term(image, gamma) for every gamma."""
    exact = t.exact
    bad = 0
    worst = 0.0
    for j in range(samples):
        ep = None if exact else elliptic_params(j, ep_base)

        def run(p):
            app = apply(t, p, ep)
            m = _bounds_of(p)
            out = []
            for gamma in itertools.product(*(range(b + 1) for b in m)):
                rev = tuple(b - g for b, g in zip(m, gamma))
                out.append((term(p, rev, ep), app.prefactor * term(app.image, gamma, ep)))
            return out

        try:
            _, pairs, _ = _sample(t.shape, seed, f"reversal:{t.name}", j, run, ep)
        except SamplingError:
            bad += 1
            continue
        for a, b in pairs:
            if not _close(a, b, exact, tol):
                bad += 1
                break
        if not exact:
            worst = max([worst] + [residual(a, b) for a, b in pairs])
    detail = {"samples": samples, "failures": bad}
    if not exact:
        detail["worst_residual"] = worst
    return CheckRow("reversal", t.name, "pass" if bad == 0 else "fail", detail)


# -- invariant forms ----------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantForm:
    name: str
    shape: str
    normalizer: Prefactor
    generators: tuple


def _inv(name, shape, num, den, gens):
    return InvariantForm(name, shape, Prefactor.parse(num, den), tuple(gens.split()))


INVARIANT_FORMS = {
    f.name: f
    for f in (
        _inv("Hardy4F3", "F4", ["[d1]_N", "[d2]_N", "[d3]_N"], [], "r1 r2 t1 t2 s"),
        _inv("Norm4F3An", "F4_Rect", ["[e1]_M", "[e2]_M", "[d+x_i]_m"], [], "s0 s1 s2"),
        _inv("Hardy10E9", "E10", [f"[[delta+s-c{k}]]_N" for k in range(6)], ["[[delta+s]]_N"], "b s1 s2 s3 s4 s5"),
        _inv("NormEn3", "Enm_Rect",
             [f"[[delta+s-c{k}]]_M" for k in range(3)] + [f"[[delta+s-d{k}+x_i]]_m" for k in range(3)],
             ["[[delta+s+x_i]]_m"], "b1 b2 s0 s1 t0 t1"),
    )
}


def normalized_value(form: InvariantForm, p: ParamVector, ep=None):
    return evaluate_prefactor(form.normalizer, p, ep).value * conditioned(p, ep).value


@dataclass
class InvariantResult:
    form: str
    generator: str
    before: object
    after: object
    passed: bool


def verify_invariant(form: InvariantForm, p: ParamVector, generator: str, ep=None, tol=1e-8) -> InvariantResult:
    exact = SHAPES[form.shape].exact
    ep = None if exact else ep
    mv = moves(form.shape)[generator]
    q = apply(mv, p, ep).image
    a = normalized_value(form, p, ep)
    b = normalized_value(form, q, ep)
    return InvariantResult(form.name, generator, a, b, _close(a, b, exact, tol))


def check_invariants(seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP, forms=None) -> list[CheckRow]:
    rows = []
    for form in (forms or INVARIANT_FORMS.values()):
        exact = SHAPES[form.shape].exact
        for g in form.generators:
            bad = 0
            worst = 0.0
            for j in range(samples):
                ep = None if exact else elliptic_params(j, ep_base)
                try:
                    _, r, _ = _sample(form.shape, seed, f"invariant:{form.name}:{g}", j,
                                      lambda p: verify_invariant(form, p, g, ep, tol), ep)
                except SamplingError:
                    bad += 1
                    continue
                bad += not r.passed
                if not exact:
                    worst = max(worst, residual(r.before, r.after))
            detail = {"generator": g, "samples": samples, "failures": bad}
            if not exact:
                detail["worst_residual"] = worst
            rows.append(CheckRow("invariant", f"{form.name}:{g}", "pass" if bad == 0 else "fail", detail))
    return rows


# -- degenerations -------------------------------------------------------------------------------

# target slot <- expression in source symbols, for n = 1 and x_1 = 0
DEGENERATION_MAPS = {
    ("F4_Rect", "F4"): ({"a1": "a1", "a2": "a2", "a3": "c", "d1": "d", "d2": "e1", "d3": "e2"},
                        {"M": "N", "m_i": "N", "x_i": "0"}),
    ("F4_Tri", "F4"): ({"a1": "a", "a2": "b_i", "a3": "c", "d1": "d", "d2": "e1", "d3": "e2"},
                       {"B": "a2", "b_i": "a2", "x_i": "0"}),
    ("Enm_Rect", "E10"): ({"s": "s", "c0": "c0", "c1": "c1", "c2": "c2", "c3": "d0", "c4": "d1", "c5": "d2"},
                          {"Mdelta": "Ndelta", "mdelta_i": "Ndelta", "M": "N", "m_i": "N", "x_i": "0"}),
    ("Enm_Tri", "E10"): ({"s": "s", "c0": "a_i", "c1": "c0", "c2": "c1", "c3": "c2", "c4": "d1", "c5": "d2"},
                         {"a_i": "c0", "A": "c0", "c0": "c1", "c1": "c2", "c2": "c3", "d1": "c4", "d2": "c5",
                          "d0": "-Ndelta", "x_i": "0"}),
}

DEGENERATIONS = [
    ("ias1", "d1st1"), ("ias2", "d1st1"), ("ias3", "d1st1"), ("las1", "d1st1"), ("las2", "d1st1"),
    ("iars1", "d1rst1"), ("iars2", "d1rst1"), ("iars3", "d1rst1"), ("iar", "ad1r1"),
    ("MN", "EBaileyT1"), ("KN", "EBaileyT1"), ("LMN", "EBaileyT1"), ("LKN", "EBaileyT1"),
    ("T20", "mn1EBDT1"), ("T11", "mn1EBDT1"), ("LMNKN", "mn1EBDT1"),
    ("T30", "BaileyT3"), ("T21", "BaileyT3"), ("T31", "BaileyT4"),
]


def _source_value_forms(src: TransformIdentity | None, shape):
    """Source symbol -> form (in source symbols) describing the source image."""
    img = compose([src], shape) if src is not None else identity_image(shape)
    out = dict(img.slots)
    if img.x is not None:
        out["x_i"] = img.x
    return out


def _symbol_map(src_shape, dst_shape):
    """Source symbol -> target form: inverse of the slot map plus the extra renames."""
    slot_map, sym_map = DEGENERATION_MAPS[(src_shape, dst_shape)]
    out = {expr: lf(t) for t, expr in slot_map.items()}
    out.update({k: lf(v) for k, v in sym_map.items()})
    return out


def degenerate_image(src: TransformIdentity | None, dst_shape: str) -> SymbolicImage:
    """Symbolic image of src at n=1, x=0, expressed in target coordinates."""
    slot_map, sym_map = DEGENERATION_MAPS[(src.shape, dst_shape)]
    vals = _source_value_forms(src, src.shape)
    sym = _symbol_map(src.shape, dst_shape)
    out = {}
    for tslot, expr in slot_map.items():
        form = lf(expr).substitute(vals)      # in source symbols
        out[tslot] = form.substitute(sym)     # in target symbols
    return SymbolicImage(dst_shape, out, None)


def degenerate_point(p: ParamVector, dst_shape: str, ep=None) -> ParamVector:
    slot_map, _ = DEGENERATION_MAPS[(p.shape, dst_shape)]
    from .shapes import environment, index_environment
    env = environment(p, ep)
    ienv = index_environment(p, "i", 0, ep)
    vals = {t: lf(e).evaluate(env, ienv) for t, e in slot_map.items()}
    N = p.N if p.N is not None else int(p.lists["m"][0])
    return ParamVector(dst_shape, vals, {}, N)


def check_degeneration(src_name, dst_name, seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP) -> CheckRow:
    src, dst = lookup(src_name), lookup(dst_name)
    want = degenerate_image(src, dst.shape).key()
    slot_map, sym_map = DEGENERATION_MAPS[(src.shape, dst.shape)]
    # x-variable must stay at 0 in the image
    x_img = compose([src], src.shape).x
    x_ok = x_img is None or str(reduce_form(x_img.substitute(_symbol_map(src.shape, dst.shape)),
                                            dst.shape)) == "0"
    match = None
    for perm in symmetric_permutations(dst.shape):
        h = permutation_move(dst.shape, perm)
        if compose([h, dst], dst.shape).key() == want:
            match = perm
            break
    label = f"{src_name}->{dst_name}"
    if match is None or not x_ok:
        return CheckRow("degeneration", label, "fail", {"reason": "no symbolic match", "x_zero": x_ok})
    h = permutation_move(dst.shape, match)
    exact = src.exact
    bad = 0
    worst = 0.0
    for j in range(samples):
        ep = None if exact else elliptic_params(j, ep_base)

        def run(p):
            u = degenerate_point(p, dst.shape, ep)
            app_s = apply(src, p, ep)
            hu, _ = replay([h], u, ep)
            app_d = apply(dst, hu, ep)
            vals = (conditioned(p, ep).value, conditioned(u, ep).value, app_s.prefactor, app_d.prefactor,
                    conditioned(app_s.image, ep).value, conditioned(app_d.image, ep).value)
            return vals

        try:
            _, vals, _ = _sample(src.shape, seed, f"degeneration:{label}", j, run, ep, n=1, zero_x=True)
        except SamplingError:
            bad += 1
            continue
        ls, ld, ps, pd, rs, rd = vals
        pairs = [(ls, ld), (ps, pd), (rs, rd)]
        if not all(_close(a, b, exact, tol) for a, b in pairs):
            bad += 1
        if not exact:
            worst = max([worst] + [residual(a, b) for a, b in pairs])
    detail = {"relabel": {k: v for k, v in match.items() if k != v}, "samples": samples, "failures": bad}
    if not exact:
        detail["worst_residual"] = worst
    return CheckRow("degeneration", label, "pass" if bad == 0 else "fail", detail)


def check_degenerations(seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP) -> list[CheckRow]:
    return [check_degeneration(a, b, seed, samples, tol, ep_base) for a, b in DEGENERATIONS]


# -- prefactor canonicalisation -----------------------------------------------------------------


def check_canonicalization(seed=0, samples=20, tol=1e-8, ep_base=DEFAULT_EP, names=None) -> list[CheckRow]:
    from .catalog import catalog
    rows = []
    for t in catalog():
        if names and t.name not in names:
            continue
        canon = replace(t, prefactor=canonicalize(t.prefactor))
        idem = canonicalize(canon.prefactor) == canon.prefactor
        bad = 0
        for j in range(samples):
            ep = None if t.exact else elliptic_params(j, ep_base)

            def run(p):
                a = evaluate_prefactor(t.prefactor, p, ep).value
                b = evaluate_prefactor(canon.prefactor, p, ep).value
                return a, b, verify(canon, p, ep, tol, max_budget=MAX_BUDGET)

            try:
                _, (a, b, r), _ = _sample(t.shape, seed, f"canon:{t.name}", j, run, ep)
            except SamplingError:
                bad += 1
                continue
            bad += not (_close(a, b, t.exact, tol) and r.passed)
        rows.append(CheckRow("canonicalization", t.name, "pass" if bad == 0 and idem else "fail",
                             {"samples": samples, "failures": bad, "idempotent": idem,
                              "reflected": sum(1 for f, g in zip(t.prefactor.num + t.prefactor.den,
                                                                 canon.prefactor.num + canon.prefactor.den)
                                               if f != g)}))
    return rows


# -- typo resolution ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Ambiguity:
    identity: str
    printed: str
    candidates: dict        # token -> list of readings (joint over tokens)
    flagged: bool = True    # one of the four flagged rows, else a correction


AMBIGUITIES = [
    Ambiguity("ias2", "[d+e-a1-a2-c]_|M|", {"e": ["e1", "e2", "e1+e2-a2-c"]}),
    Ambiguity("iars2", "[d+e-a1-a2-c]_|M|", {"e": ["e1", "e2", "e1+e2"]}),
    Ambiguity("iars3", "[d+e-a1-a2-c]_|M| and [d x_i]_m_i", {"e": ["e1", "e2", "e1+e2"],
                                                            "dx": ["d+x_i", "d-x_i"]}),
    Ambiguity("las1", "[e]_N", {"e": ["e1", "e2", "e1+e2"]}),
]

CORRECTIONS = [
    Ambiguity("ias1", "[d+e-a1-a2-c]_|M|", {"e": ["e1", "e2", "e1+e2"]}, False),
    Ambiguity("iar", "no sign factor", {"sign": ["", "M"]}, False),
    Ambiguity("BaileyT3", "[[3delta+4s-c0-c1-c2-2c3-2c4-2c5]]_N",
              {"den": ["3delta+4s-c0-c1-c2-2c3-2c4-2c5", "4delta+4s-c0-c1-c2-2c3-2c4-2c5"]}, False),
    Ambiguity("BaileyT4", "[[4delta+5s-2(c0+...+c5)]]_N",
              {"den": ["4delta+5s-2c0-2c1-2c2-2c3-2c4-2c5", "5delta+5s-2c0-2c1-2c2-2c3-2c4-2c5"]}, False),
    Ambiguity("mn1EBDT1", "d2 unbound in the where-clause", {"d2": ["-Ndelta", "0"]}, False),
    Ambiguity("EBDT1", "d2 unbound in the where-clause", {"d2": ["-Ndelta", "0"]}, False),
    Ambiguity("LMN", "s~ = delta+2s-c2-d0-d1", {"st": ["delta+2s-c2-d0-d1", "delta+2s-c0-d1-d2"]}, False),
    Ambiguity("LMNKN", "[[2delta+s-c0-c1-d1-d2, 2delta+s-c0-c2-d1-d2]]_N", {"k": ["2delta+s", "2delta+2s"]}, False),
]


def _variant(name: str, reading: dict) -> TransformIdentity:
    raw = next(r for r in RAW if r["name"] == name)
    return build(raw, reading)


def reading_points(name: str, variants=(), seed=0, samples=50, ep_base=DEFAULT_EP):
    """Points where both series sides of the identity evaluate.

    Every reading of a token shares one map of parameters (the tokens live in
    prefactors), so the same points serve all candidates.  A point where some
    candidate's prefactor overflows double precision is redrawn; a pole in a
    candidate's prefactor is kept and counts against that candidate.
    """
    t = lookup(name)

    def probe(p, ep):
        out = conditioned(p, ep), conditioned(map_point(t, p, ep), ep)
        for v in variants:
            try:
                evaluate_prefactor(v.prefactor, p, ep)
            except PoleError:
                pass
        return out

    pts = []
    for j in range(samples):
        ep = None if t.exact else elliptic_params(j, ep_base)
        rng = stream(seed, f"typos:{name}", j)
        p, _, _ = admissible(lambda: draw_point(t.shape, rng, Bounds(), ep), lambda p: probe(p, ep))
        pts.append((p, ep))
    return pts


def score_reading(name: str, reading: dict, points, tol=1e-8):
    """Pass count of one reading over ``points``.  Any exception, a pole of the
    candidate's own prefactor included, counts as a failure."""
    try:
        t = _variant(name, reading)
    except (ValueError, KeyError) as ex:
        return 0, f"unparseable: {ex}"
    passes = 0
    for p, ep in points:
        try:
            passes += verify(t, p, ep, tol, max_budget=np.inf).passed
        except Exception:
            pass
    return passes, ""


def resolve_typos(seed=0, samples=50, tol=1e-8, ep_base=DEFAULT_EP, include_corrections=True) -> dict:
    rows = []
    items = AMBIGUITIES + (CORRECTIONS if include_corrections else [])
    for amb in items:
        tokens = list(amb.candidates)
        readings = [dict(zip(tokens, combo)) for combo in itertools.product(*(amb.candidates[k] for k in tokens))]
        variants = []
        for reading in readings:
            try:
                variants.append(_variant(amb.identity, reading))
            except (ValueError, KeyError):
                pass
        points = reading_points(amb.identity, variants, seed, samples, ep_base)
        results = []
        for reading in readings:
            passes, note = score_reading(amb.identity, reading, points, tol)
            results.append({"reading": reading, "passes": passes, "valid": passes == samples,
                            **({"note": note} if note else {})})
        valid = [r for r in results if r["valid"]]
        chosen = READINGS.get(amb.identity, {})
        if len(valid) == 1:
            status = "UNIQUE"
            winner = valid[0]["reading"]
            if any(chosen.get(k) != v for k, v in winner.items()):
                status = "MISMATCH"
        else:
            status = "OPEN"
            winner = None
        rows.append({"identity": amb.identity, "printed": amb.printed, "flagged": amb.flagged,
                     "status": status, "winner": winner, "samples": samples, "candidates": results})
    if include_corrections:
        rows.append(_resolve_normalizer(seed, samples, tol, ep_base))
    return {"ambiguities": [r for r in rows if r["flagged"]],
            "corrections": [r for r in rows if not r["flagged"]]}


# printed denominator of the E10 invariant form, against the corrected one
HARDY_DENOMINATORS = ["[[s]]_N", "[[delta+s]]_N"]


def _resolve_normalizer(seed, samples, tol, ep_base):
    base = INVARIANT_FORMS["Hardy10E9"]
    results = []
    for den in HARDY_DENOMINATORS:
        form = replace(base, normalizer=Prefactor(base.normalizer.num, (Prefactor.parse([den]).num[0],)))
        rows = check_invariants(seed, samples, tol, ep_base, forms=[replace(form, generators=("b",))])
        fails = rows[0].detail["failures"]
        results.append({"reading": {"den": den}, "passes": samples - fails, "valid": fails == 0})
    valid = [r for r in results if r["valid"]]
    status = "UNIQUE" if len(valid) == 1 else "OPEN"
    if status == "UNIQUE" and valid[0]["reading"]["den"] != str(base.normalizer.den[0]).replace(" ", ""):
        status = "MISMATCH"
    return {"identity": "Hardy10E9", "printed": "[[s]]_N", "flagged": False, "status": status,
            "winner": valid[0]["reading"] if len(valid) == 1 else None, "samples": samples,
            "candidates": results}


# -- Hardy's S5 symmetry of 3F2 at unit argument ------------------------------------------

# x_i in [7, 7.5] keeps s >= 5.5 for every ordering, so 3000 terms leave a tail far below 1e-10
HARDY_RANGE = (7.0, 7.5)
HARDY_CHECK_TERMS = 3000


def check_hardy_s5(seed=0, points=10, perms=20, tol=1e-8) -> CheckRow:
    from .series import HardyVector, eval_hardy_3f2
    worst = 0.0
    for j in range(points):
        rng = stream(seed, "hardy", j)
        x = rng.uniform(*HARDY_RANGE, size=5)
        base = eval_hardy_3f2(HardyVector(*x), HARDY_CHECK_TERMS)
        for _ in range(perms):
            y = x[rng.permutation(5)]
            v = eval_hardy_3f2(HardyVector(*y), HARDY_CHECK_TERMS)
            worst = max(worst, float(abs(v - base) / abs(base)))
    return CheckRow("hardy_s5", "3F2", "pass" if worst < tol else "fail",
                    {"points": points, "permutations": perms, "worst_deviation": worst})
