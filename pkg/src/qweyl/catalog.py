"""Constructors for the algebra presentations and named maps in the catalog.

Each constructor returns a finalized Presentation whose rewrite rules are
oriented along the declared monomial order, together with the star
structure where one exists.  Displayed defining relations are attached
as ``display_relations`` so verification suites can report on them by
name.

Presentations whose solved rules need 1/(q - q^-1)-type coefficients
(the u-localized phase-space algebra and the q-difference algebras) are
built over the exact fraction field Q(i)(q^(1/2)); everything else stays
over the Laurent ring.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Sequence

from .coeff import Scalar
from .errors import BadK
from .freealg import Element, Morphism, Presentation
from .linalg import ScalarFraction

__all__ = [
    "heisenberg",
    "oscillator_classical",
    "q_oscillator",
    "q_heisenberg",
    "qdiff_presentation",
    "qcoord3",
    "lightcone_indices",
    "index_name",
    "resolve",
    "named_morphisms",
    "CONFLUENCE_SUITE",
    "QHEIS_STAGES",
]

_ONE = Scalar.one()
_I = Scalar.i()
_Q = Scalar.q_power(1)
_QINV = Scalar.q_power(-1)

QHEIS_STAGES = ("basic", "conjugated", "with_r", "tilde_xi",
                "final_printed", "final_corrected")


def heisenberg(n: int) -> Presentation:
    """Weyl algebra A_n: [x^i, p_j] = i delta, all other pairs commute.

    Precedence x1 < ... < xn < p1 < ... < pn, so normal words are
    x-monomials followed by p-monomials.  All generators are star-fixed.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    p = Presentation(f"heisenberg(n={n})")
    xs = [p.add_generator(f"x{i+1}") for i in range(n)]
    ps = [p.add_generator(f"p{i+1}") for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                p.add_rule([f"p{i+1}", f"x{i+1}"], xs[i] * ps[i] - _I * p.one())
            else:
                p.add_rule([f"p{i+1}", f"x{j+1}"], xs[j] * ps[i])
    for i in range(n):
        for j in range(i):
            p.add_rule([f"x{i+1}", f"x{j+1}"], xs[j] * xs[i])
            p.add_rule([f"p{i+1}", f"p{j+1}"], ps[j] * ps[i])
    p.set_star({g.name: p.gen_element(g.name) for g in p.generators})
    for i in range(n):
        p.add_display_relation(f"[x{i+1}, p{i+1}] = i",
                               xs[i] * ps[i] - ps[i] * xs[i], _I * p.one())
    return p


def oscillator_classical() -> Presentation:
    """Undeformed oscillator A Ad - Ad A = 1 with the number operator N = Ad A."""
    p = Presentation("oscillator")
    a = p.add_generator("A")
    ad = p.add_generator("Ad")
    nn = p.add_generator("N")
    p.add_rule(["A", "Ad"], nn + p.one())
    p.add_rule(["Ad", "A"], nn)
    p.add_rule(["N", "A"], a * nn - a)
    p.add_rule(["N", "Ad"], ad * nn + ad)
    p.set_star({"A": ad, "Ad": a, "N": nn})
    p.add_display_relation("A Ad - Ad A = 1", a * ad - ad * a, p.one())
    p.add_display_relation("N = Ad A", nn, ad * a)
    return p


def q_oscillator() -> Presentation:
    """q-oscillator a ad - q ad a = 1; star swaps a and ad."""
    p = Presentation("q-oscillator")
    ad = p.add_generator("ad")
    a = p.add_generator("a")
    p.add_rule(["a", "ad"], _Q * (ad * a) + p.one())
    p.set_star({"a": ad, "ad": a})
    p.add_display_relation("a ad - q ad a = 1",
                           a * ad - _Q * (ad * a), p.one())
    return p


def q_heisenberg(stage: str = "final_corrected") -> Presentation:
    """The staged q-deformed phase-space presentations.

    basic            p, x with p x - q x p = -i
    conjugated       adds the conjugate coordinate xbar with
                     p xbar - q^-1 xbar p = -i q^-1 and x xbar = q xbar x
    with_r           adds r = i[p, x], rbar = i[p, xbar] as first-class
                     generators with their (eliminable) defining rules
    tilde_xi         adds the real combination xi_t = x + xbar
    final_printed    xi, p, u, u^-1 with u p = q^-1 p u as printed
    final_corrected  the same algebra with u p = q p u, the variant
                     consistent with the h-series realization and with
                     the momentum representation

    Star: p and xi (and xi_t) are fixed, x <-> xbar, r <-> rbar,
    ubar = q^-1 u^-1.
    """
    if stage not in QHEIS_STAGES:
        raise ValueError(f"unknown stage {stage!r}; one of {QHEIS_STAGES}")
    if stage in ("final_printed", "final_corrected"):
        return _build_qheis5(corrected=stage == "final_corrected")
    return _build_qheis_stage(stage)


def _build_qheis_stage(stage: str) -> Presentation:
    p = Presentation(f"qheis[{stage}]")
    if stage == "tilde_xi":
        p.add_generator("xi_t", weight=2)
    if stage != "basic":
        p.add_generator("xbar")
    x = p.add_generator("x")
    pp = p.add_generator("p")

    p.add_rule(["p", "x"], _Q * (x * pp) - _I * p.one())
    p.add_display_relation("p x - q x p = -i",
                           pp * x - _Q * (x * pp), -_I * p.one())
    if stage == "basic":
        # No star: with q real there is no antilinear involution fixing both
        # generators, which is what forces the conjugate coordinate xbar.
        return p

    xb = p.gen_element("xbar")
    p.add_rule(["p", "xbar"], _QINV * (xb * pp) - (_I * _QINV) * p.one())
    p.add_rule(["x", "xbar"], _Q * (xb * x))
    p.add_display_relation("p xbar - q^-1 xbar p = -i q^-1",
                           pp * xb - _QINV * (xb * pp), -(_I * _QINV) * p.one())
    p.add_display_relation("x xbar = q xbar x", x * xb, _Q * (xb * x))
    star = {"x": xb, "xbar": x, "p": pp}

    if stage in ("with_r", "tilde_xi"):
        r = p.add_generator("r", weight=3)
        rb = p.add_generator("rbar", weight=3)
        r_def = _I * (pp * x - x * pp)
        rb_def = _I * (pp * xb - xb * pp)
        p.add_rule(["r"], r_def)
        p.add_rule(["rbar"], rb_def)
        p.add_display_relation("r = i [p, x]", r, r_def)
        p.add_display_relation("rbar = i [p, xbar]", rb, rb_def)
        star["r"] = rb
        star["rbar"] = r

    if stage == "tilde_xi":
        xi_t = p.gen_element("xi_t")
        r, rb = p.gen_element("r"), p.gen_element("rbar")
        p.add_rule(["xi_t"], x + xb)
        star["xi_t"] = xi_t
        coeff = (_QINV + _ONE) * _I
        p.add_display_relation(
            "xi_t p - q^-1 p xi_t = (q^-1 + 1) i rbar",
            xi_t * pp - _QINV * (pp * xi_t), coeff * rb)
        p.add_display_relation(
            "xi_t p - q p xi_t = (q^-1 + 1) i q r",
            xi_t * pp - _Q * (pp * xi_t), (coeff * _Q) * r)

    p.set_star(star)
    return p


def _build_qheis5(corrected: bool) -> Presentation:
    """xi, p, u, u^-1 over the fraction field: the two xi-p displays are
    solved for both products, which is what makes the rule set confluent:
        xi p = i (q u - q^-1 u^-1)/(q - q^-1),
        p xi = i (u - u^-1)/(q - q^-1)."""
    one = ScalarFraction.one()
    p = Presentation(f"qheis5[{'corrected' if corrected else 'printed'}]",
                     coeff_one=one)
    xi = p.add_generator("xi")
    pp = p.add_generator("p")
    u = p.add_generator("u")
    ui = p.add_generator("uinv")
    p.mark_inverse("u", "uinv")

    i = one * _I
    q = one * _Q
    qi = one * _QINV
    den = one * (_Q - _QINV)

    p.add_rule(["xi", "p"], (i * q / den) * u - (i * qi / den) * ui)
    p.add_rule(["p", "xi"], (i / den) * u - (i / den) * ui)
    if corrected:
        p.add_rule(["u", "p"], q * (pp * u))
        p.add_rule(["uinv", "p"], qi * (pp * ui))
    else:
        p.add_rule(["u", "p"], qi * (pp * u))
        p.add_rule(["uinv", "p"], q * (pp * ui))
    p.add_rule(["u", "xi"], qi * (xi * u))
    p.add_rule(["uinv", "xi"], q * (xi * ui))
    p.add_rule(["u", "uinv"], p.one())
    p.add_rule(["uinv", "u"], p.one())

    p.set_star({"xi": xi, "p": pp, "u": qi * ui, "uinv": q * u})

    p.add_display_relation("xi p - q^-1 p xi = i u",
                           xi * pp - qi * (pp * xi), i * u)
    p.add_display_relation("xi p - q p xi = i u^-1",
                           xi * pp - q * (pp * xi), i * ui)
    if corrected:
        p.add_display_relation("u p = q p u", u * pp, q * (pp * u))
    else:
        p.add_display_relation("u p = q^-1 p u", u * pp, qi * (pp * u))
    p.add_display_relation("u xi = q^-1 xi u", u * xi, qi * (xi * u))
    p.add_display_relation("u u^-1 = 1", u * ui, p.one())
    p.add_display_relation("u^-1 u = 1", ui * u, p.one())
    return p


def lightcone_indices(dim: int) -> List[int]:
    """Index sets {-n..n} for odd dim = 2n+1 and {-n..-1,1..n} for even dim."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    n = dim // 2
    if dim % 2:
        return list(range(-n, n + 1))
    return [a for a in range(-n, n + 1) if a != 0]


def index_name(alpha: int) -> str:
    """ASCII-safe index suffix: -1 -> 'm1', 2 -> '2'."""
    return f"m{-alpha}" if alpha < 0 else str(alpha)


def qdiff_presentation(indices: Sequence[int], k: Mapping[int, int]
                       ) -> Presentation:
    """Tensor product of one-variable q-difference algebras, over the
    fraction field.

    Per index a (with k = k(a)): generators x_a, D_a, u_a, uinv_a with
        D x - q^k x D = u^-k,    D x - q^-k x D = u^k,
        u x = q x u,             u D = q^-1 D u,
    all off-diagonal pairs commuting.  Star: xbar_a = x_-a,
    bar(D_a) = -D_-a, bar(u_a) = q^-1 uinv_-a.  The exponent map must
    satisfy k(a) = -k(-a) for paired indices a != 0 and vanish nowhere
    (BadK otherwise; the middle index of odd dimensions is exempt from
    the pairing constraint since it would force k(0) = 0).
    """
    indices = sorted(indices)
    for a in indices:
        if k.get(a, 0) == 0:
            raise BadK(f"k({a}) must be a nonzero integer")
        if a != 0 and -a in k and k[a] != -k[-a]:
            raise BadK(f"k({a}) = {k[a]} but k({-a}) = {k[-a]}; need k(a) = -k(-a)")

    one = ScalarFraction.one()
    p = Presentation(
        "qdiff[" + ",".join(f"k({a})={k[a]}" for a in indices) + "]",
        coeff_one=one)
    # ascending precedence by index, then x < D < u < uinv within an index;
    # weight max(1, |k|) on x and D keeps D x -> u^k order-decreasing.
    for a in indices:
        nm = index_name(a)
        w = max(1, abs(k[a]))
        p.add_generator(f"x_{nm}", weight=w)
        p.add_generator(f"D_{nm}", weight=w)
        p.add_generator(f"u_{nm}")
        p.add_generator(f"uinv_{nm}")
        p.mark_inverse(f"u_{nm}", f"uinv_{nm}")

    def upow(a: int, m: int) -> Element:
        if m == 0:
            return p.one()
        g = f"u_{index_name(a)}" if m > 0 else f"uinv_{index_name(a)}"
        return p.element([g] * abs(m))

    star: Dict[str, Element] = {}
    q = one * _Q
    qi = one * _QINV
    for a in indices:
        nm = index_name(a)
        x, d = p.gen_element(f"x_{nm}"), p.gen_element(f"D_{nm}")
        u, ui = p.gen_element(f"u_{nm}"), p.gen_element(f"uinv_{nm}")
        ka = k[a]
        qk = one * Scalar.q_power(ka)
        qmk = one * Scalar.q_power(-ka)
        den = qk - qmk
        # solved pair: D x = (q^k u^k - q^-k u^-k)/(q^k - q^-k),
        #              x D = (u^k - u^-k)/(q^k - q^-k)
        p.add_rule([f"D_{nm}", f"x_{nm}"],
                   (qk / den) * upow(a, ka) - (qmk / den) * upow(a, -ka))
        p.add_rule([f"x_{nm}", f"D_{nm}"],
                   (one / den) * upow(a, ka) - (one / den) * upow(a, -ka))
        p.add_rule([f"u_{nm}", f"x_{nm}"], q * (x * u))
        p.add_rule([f"u_{nm}", f"D_{nm}"], qi * (d * u))
        p.add_rule([f"uinv_{nm}", f"x_{nm}"], qi * (x * ui))
        p.add_rule([f"uinv_{nm}", f"D_{nm}"], q * (d * ui))
        p.add_rule([f"u_{nm}", f"uinv_{nm}"], p.one())
        p.add_rule([f"uinv_{nm}", f"u_{nm}"], p.one())
        p.add_display_relation(
            f"D_{nm} x_{nm} - q^({ka}) x_{nm} D_{nm} = u_{nm}^({-ka})",
            d * x - qk * (x * d), upow(a, -ka))
        p.add_display_relation(
            f"D_{nm} x_{nm} - q^({-ka}) x_{nm} D_{nm} = u_{nm}^({ka})",
            d * x - qmk * (x * d), upow(a, ka))
        p.add_display_relation(
            f"u_{nm} x_{nm} = q x_{nm} u_{nm}", u * x, q * (x * u))
        p.add_display_relation(
            f"u_{nm} D_{nm} = q^-1 D_{nm} u_{nm}", u * d, qi * (d * u))
        mnm = index_name(-a)
        star[f"x_{nm}"] = p.gen_element(f"x_{mnm}")
        star[f"D_{nm}"] = -p.gen_element(f"D_{mnm}")
        star[f"u_{nm}"] = qi * p.gen_element(f"uinv_{mnm}")
        star[f"uinv_{nm}"] = q * p.gen_element(f"u_{mnm}")

    # off-diagonal: everything commutes (tensor-product structure)
    for ia, a in enumerate(indices):
        for b in indices[:ia]:
            for ga in ("x", "D", "u", "uinv"):
                for gb in ("x", "D", "u", "uinv"):
                    hi = f"{ga}_{index_name(a)}"
                    lo = f"{gb}_{index_name(b)}"
                    p.add_rule([hi, lo], p.element([lo, hi]))
    p.set_star(star)
    return p


def qcoord3() -> Presentation:
    """Almost-commutative three-coordinate algebra produced by the u-dressing
    xq^0 = u_-1 u_1^-1 x^0 of commuting real coordinates.

    The relations carry the exponents the dressing actually produces
    (xq^-1 xq^0 = q^-1 xq^0 xq^-1, xq^1 xq^0 = q xq^0 xq^1); acting on
    monomials confirms them and flags the opposite exponent for the
    (-1, 0) pair that the source text displays.
    """
    p = Presentation("qcoord3")
    xm = p.add_generator("xq_m1")
    x0 = p.add_generator("xq_0")
    xp = p.add_generator("xq_1")
    p.add_rule(["xq_0", "xq_m1"], _Q * (xm * x0))
    p.add_rule(["xq_1", "xq_0"], _Q * (x0 * xp))
    p.add_rule(["xq_1", "xq_m1"], xm * xp)
    p.set_star({"xq_m1": xp, "xq_1": xm, "xq_0": x0})
    p.add_display_relation("xq_m1 xq_0 = q^-1 xq_0 xq_m1",
                           xm * x0, _QINV * (x0 * xm))
    p.add_display_relation("xq_1 xq_0 = q xq_0 xq_1", xp * x0, _Q * (x0 * xp))
    p.add_display_relation("xq_m1 xq_1 = xq_1 xq_m1", xm * xp, xp * xm)
    return p


# --------------------------------------------------------------------------
# registry


def _parse_params(spec: str) -> Dict[str, str]:
    out = {}
    for part in spec.split(","):
        if not part:
            continue
        if "=" not in part:
            raise KeyError(f"malformed algebra parameter {part!r}")
        key, val = part.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def resolve(key: str) -> Presentation:
    """Resolve a catalog key like 'heisenberg:n=2' or 'qheis5:variant=printed'."""
    name, _, spec = key.partition(":")
    params = _parse_params(spec) if spec else {}
    name = name.strip()
    if name == "heisenberg":
        return heisenberg(int(params.get("n", 1)))
    if name in ("oscillator", "osc"):
        return oscillator_classical()
    if name in ("qoscillator", "qosc", "q-oscillator"):
        return q_oscillator()
    if name == "qheis1":
        return q_heisenberg("basic")
    if name == "qheis3":
        return q_heisenberg("conjugated")
    if name == "qheis4":
        variant = params.get("variant", "tilde_xi")
        if variant not in ("tilde_xi", "with_r"):
            raise KeyError(f"unknown qheis4 variant {variant!r}")
        return q_heisenberg(variant)
    if name == "qheis5":
        variant = params.get("variant", "corrected")
        if variant not in ("corrected", "printed"):
            raise KeyError(f"unknown qheis5 variant {variant!r}")
        return q_heisenberg(f"final_{variant}")
    if name == "qdiff":
        kval = int(params.get("k", 1))
        dim = int(params.get("dim", 3))
        idx = lightcone_indices(dim)
        kmap = {a: (kval if a > 0 else -kval) for a in idx if a != 0}
        if 0 in idx:
            kmap[0] = 1
        return qdiff_presentation(idx, kmap)
    if name == "qcoord3":
        return qcoord3()
    raise KeyError(f"unknown algebra key {key!r}")


#: Catalog keys whose presentations must pass the diamond-lemma check.
CONFLUENCE_SUITE = [
    "heisenberg:n=1",
    "heisenberg:n=2",
    "heisenberg:n=3",
    "oscillator",
    "qoscillator",
    "qheis1",
    "qheis3",
    "qheis4:variant=with_r",
    "qheis4",
    "qheis5:variant=corrected",
    "qdiff:k=1",
    "qdiff:k=2",
]


def named_morphisms():
    """The catalog of maps used by the verification suites.

    Symbolic maps are Morphism objects; maps that leave the symbolic
    layer (the h-series realization, the numeric oscillator deforming
    map) are descriptor dicts naming the module that consumes them.
    """
    out = []

    # remark-1 coordinate dressing, symbolically into the q-difference algebra
    target = qdiff_presentation(lightcone_indices(3), {-1: -1, 0: 1, 1: 1})
    src = qcoord3()
    out.append(Morphism(src, target, {
        "xq_m1": target.gen_element("x_m1"),
        "xq_0": (target.gen_element("u_m1") * target.gen_element("uinv_1")
                 * target.gen_element("x_0")),
        "xq_1": target.gen_element("x_1"),
    }, name="remark1-dressing"))

    # naive q-oscillator -> oscillator generator map; fails by (q-1) Ad A,
    # which is why the honest deforming map lives in the spectral layer
    qo, co = q_oscillator(), oscillator_classical()
    out.append(Morphism(qo, co,
                        {"a": co.gen_element("A"), "ad": co.gen_element("Ad")},
                        name="naive-qosc-to-osc"))

    out.append({
        "name": "ureal-realization",
        "kind": "h-series",
        "consumer": "qweyl.weyl.verify_qheis5_realization",
        "note": "p -> p_c, u -> exp(-i h p_c x_c), "
                "xi -> (i/p)(u - u^-1)/(q - q^-1)",
    })
    out.append({
        "name": "osc2-deforming-map",
        "kind": "numeric",
        "consumer": "qweyl.fock.deforming_map_check",
        "rescale_exponent": "-1/8",
        "note": "a = q^(N/4) A sqrt([N]/N); the constant rescale "
                "a -> q^(-1/8) a restores a ad - q ad a = 1 exactly",
    })
    return out
