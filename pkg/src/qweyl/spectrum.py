"""Classification of centre primes of the four algebras into their strata.

Inputs are centre primes described as the zero prime, a named height-1 prime
(or a univariate/bivariate irreducible generator), or a maximal point: a
residue field F' together with coordinates ((r0, t0) for the Weyl algebra,
(s0, t0) for the others).  Every maximal ideal of the centre over a finite
base field is the kernel of evaluation at such a point, so this loses nothing
at desk scale while avoiding bivariate primality testing.

The maximal strata routing for the Weyl algebra: with s0 recovered from
s = (-1)^(n-1) rt + (q-1)^(-n),

  r0 = t0 = 0        -> the top finite quotient M_n(K)
  t0 = 0, r0 != 0    -> matrices over K[r]/(minpoly r0)
  r0 = 0, t0 != 0    -> matrices over K[t]/(minpoly t0)
  s0 = 0, r0 t0 != 0 -> the fiber of primes (h, f) with f | x^n - t0
  otherwise          -> the cyclic algebra over F' with parameters (s0, t0),
                        classified by the ce engine.
"""

from dataclasses import dataclass, field as dc_field


from .ce import CESpec, ce_classify
from .errors import (
    UNKNOWN,
    InvalidCoordinates,
    ParseError,
    TooLarge,
    UnsupportedFiberEnumeration,
)
from .fields import ExtensionField, PrimeField
from .polys import Polynomial, factor_over_finite_field

ATLAS_POINT_BOUND = 20000


@dataclass(frozen=True)
class CentrePrime:
    algebra: str
    kind: str  # "zero" | "height1" | "point"
    generator: object = None  # height1: tag or ("poly_t"|"poly_r"|"poly_s", coeffs) or ("bivariate", text, bool)
    ext_field: object = None  # point: residue field
    coords: tuple = None  # point: pair in the residue field


@dataclass
class SpectrumReport:
    algebra: str
    stratum: str
    input: dict
    quotient: dict
    simple_module: dict = None
    endomorphism: dict = None
    completely_prime: object = None
    primitive: bool = False
    fiber: list = None
    ce_report: object = None
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        out = {
            "algebra": self.algebra,
            "stratum": self.stratum,
            "input": self.input,
            "quotient": self.quotient,
            "completely_prime": self.completely_prime,
            "primitive": self.primitive,
        }
        if self.simple_module is not None:
            out["simple_module"] = self.simple_module
        if self.endomorphism is not None:
            out["endomorphism"] = self.endomorphism
        if self.fiber is not None:
            out["fiber"] = self.fiber
        if self.ce_report is not None:
            out["ce_report"] = self.ce_report.to_json()
        if self.notes:
            out["notes"] = self.notes
        return out


def weyl_s_value(field, r0, t0):
    """s = (-1)^(n-1) r t + (q-1)^(-n), evaluated at a point."""
    F = field
    sign = F.one() if F.n % 2 == 1 else F.neg(F.one())
    inv = F.inv(F.pow(F.sub(F.q, F.one()), F.n))
    return F.add(F.mul(sign, F.mul(r0, t0)), inv)


def classify_prime(prime, config=None, search_budget=20000):
    tag = prime.algebra
    if tag not in ("A", "A1", "CA", "B"):
        raise ParseError(f"unknown algebra {tag!r}")
    if prime.kind == "zero":
        return _classify_zero(prime)
    if prime.kind == "height1":
        return _classify_height1(prime)
    if prime.kind == "point":
        return _classify_point(prime, search_budget)
    raise ParseError(f"unknown prime kind {prime.kind!r}")


def _field_describe(F):
    return F.spec()


def _classify_zero(prime):
    tag = prime.algebra
    centres = {
        "A1": "K[r,t]",
        "A": "K[s,t]",
        "CA": "K[s,t^(+-1)]",
        "B": "K[s^(+-1),t^(+-1)]",
    }
    return SpectrumReport(
        algebra=tag,
        stratum="zero",
        input={"kind": "zero", "centre": centres[tag]},
        quotient={
            "type": "DomainNonArtinian",
            "description": (
                "full quotient ring: the central simple division algebra of "
                "degree n over the rational function field of the centre"
            ),
        },
        completely_prime=True,
        primitive=False,
    )


_NAMED_HEIGHT1 = {
    "A1": {
        "t": ("(t)", "MatrixOverFunctionField", "M_n(K(r))", False),
        "r": ("(r)", "MatrixOverFunctionField", "M_n(K(t))", False),
        "h": ("(h)", "LaurentDomain", "K[x^(+-1)], quotient field K(x)", True),
    },
    "A": {
        "x": ("(x)", "PolynomialDomain", "K[h], quotient field K(h)", True),
        "h": ("(h)", "PolynomialDomain", "K[x], quotient field K(x)", True),
    },
    "CA": {
        "h": ("(h)", "LaurentDomain", "K[x^(+-1)], quotient field K(x)", True),
    },
    "B": {},
}

_CONTRACTIONS = {
    ("A1", "s"): ("h", "the central prime (s) is the contraction of (h)"),
    ("A", "s"): ("h", "the central prime (s) is the contraction of (h)"),
    ("A", "t"): ("x", "the central prime (t) is the contraction of (x)"),
    ("CA", "s"): ("h", "the central prime (s) is the contraction of (h)"),
}


def _classify_height1(prime):
    tag = prime.algebra
    gen = prime.generator
    note = None
    if isinstance(gen, str) and (tag, gen) in _CONTRACTIONS:
        gen, note = _CONTRACTIONS[(tag, gen)]
    if isinstance(gen, str):
        named = _NAMED_HEIGHT1[tag].get(gen)
        if named is None:
            raise ParseError(f"no named height-1 prime {gen!r} in algebra {tag}")
        stratum, qtype, desc, cp = named
        rep = SpectrumReport(
            algebra=tag,
            stratum=stratum,
            input={"kind": "height1", "generator": gen},
            quotient={"type": "DomainNonArtinian", "subtype": qtype, "description": desc},
            completely_prime=cp,
            primitive=False,
        )
        if note:
            rep.notes.append(note)
        return rep
    kind = gen[0]
    if kind in ("poly_t", "poly_r", "poly_s"):
        coeffs, verified = gen[1], False
        var = kind.split("_")[1]
        field = prime.ext_field
        if field is None:
            raise ParseError("a field is required to validate the generator")
        poly = Polynomial(field, coeffs).monic()
        if poly.degree < 1:
            raise ParseError("generator must be nonconstant")
        if poly.degree == 1 and field.is_zero(poly.coeffs[0]):
            raise ParseError(f"the named prime ({var}) must use its own tag")
        if field.is_finite():
            factors = factor_over_finite_field(poly)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ParseError(f"generator {poly} is reducible")
            verified = True
        desc = f"{var}-polynomial {poly}"
    elif kind == "bivariate":
        desc, verified = gen[1], False
    else:
        raise ParseError(f"unknown generator form {gen!r}")
    stratum = {"A1": "N''", "A": "N", "CA": "N'", "B": "height1"}[tag]
    rep = SpectrumReport(
        algebra=tag,
        stratum=stratum,
        input={
            "kind": "height1",
            "generator": desc,
            "irreducibility": "verified" if verified else "caller-asserted (unverified)",
        },
        quotient={
            "type": "DomainNonArtinian",
            "subtype": "CEAlgebra",
            "description": (
                "quotient ring is the cyclic algebra over the fraction field of "
                "the centre modulo the generator, with parameters the images of "
                "(s, t); described symbolically, no fraction-field arithmetic"
            ),
        },
        completely_prime=UNKNOWN,
        primitive=False,
    )
    return rep


def _require_point_field(prime):
    F = prime.ext_field
    c1, c2 = prime.coords
    if isinstance(F, ExtensionField):
        d = 1
        for c in (c1, c2):
            d = _lcm(d, F.subfield_degree(c))
        if d != F.degree:
            raise InvalidCoordinates(
                f"coordinates generate a degree-{d} subfield of the degree-{F.degree} residue field"
            )
    return F, c1, c2


def _lcm(a, b):
    g, x = a, b
    while x:
        g, x = x, g % x
    return a * b // g


def _min_poly(K, F, c):
    """Minimal polynomial of c in the residue field F over the base K."""
    if isinstance(F, PrimeField):
        return [F.neg(c), F.one()]
    return F.min_poly(c)


def _classify_point(prime, search_budget):
    tag = prime.algebra
    F, c1, c2 = _require_point_field(prime)
    n = F.n
    if tag == "B" and (F.is_zero(c1) or F.is_zero(c2)):
        raise InvalidCoordinates("torus centre coordinates must be nonzero")
    if tag == "CA" and F.is_zero(c2):
        raise InvalidCoordinates("t must be invertible in this centre")

    if tag == "A1":
        r0, t0 = c1, c2
        s0 = weyl_s_value(F, r0, t0)
        if F.is_zero(r0) and F.is_zero(t0):
            return _matrix_stratum_report(
                tag, "(t,r)", F, {"r": "0", "t": "0"},
                over="the base field", module="the cyclic module killed by (t, y)",
            )
        if F.is_zero(t0):
            return _matrix_stratum_report(
                tag, "T", F, {"r": F.to_str(r0), "t": "0"},
                over="K[r]/(minimal polynomial of the r-coordinate)",
                module="column space cut out by the first idempotent",
            )
        if F.is_zero(r0):
            return _matrix_stratum_report(
                tag, "R", F, {"r": "0", "t": F.to_str(t0)},
                over="K[t]/(minimal polynomial of the t-coordinate)",
                module="column space cut out by the first idempotent",
            )
        if F.is_zero(s0):
            return _fiber_report(tag, "H''", F, t0, {"r": F.to_str(r0), "t": F.to_str(t0)})
        return _ce_stratum_report(tag, "M''", F, s0, t0,
                                  {"r": F.to_str(r0), "t": F.to_str(t0)}, search_budget)

    s0, t0 = c1, c2
    coords = {"s": F.to_str(s0), "t": F.to_str(t0)}
    if tag == "A":
        if F.is_zero(s0) and F.is_zero(t0):
            return SpectrumReport(
                algebra=tag, stratum="(x,h)",
                input={"kind": "point", "field": _field_describe(F), "coords": coords},
                quotient={"type": "Field", "description": "the base field"},
                simple_module={"dimension": 1, "description": "the base field"},
                endomorphism={"description": "the base field"},
                completely_prime=True, primitive=True,
            )
        if F.is_zero(s0):
            return _fiber_report(tag, "H", F, t0, coords)
        if F.is_zero(t0):
            return _fiber_report(tag, "X", F, s0, coords, var="h")
        return _ce_stratum_report(tag, "M", F, s0, t0, coords, search_budget)
    if tag == "CA":
        if F.is_zero(s0):
            return _fiber_report(tag, "H'", F, t0, coords)
        return _ce_stratum_report(tag, "M'", F, s0, t0, coords, search_budget)
    return _ce_stratum_report(tag, "max", F, s0, t0, coords, search_budget)


def _matrix_stratum_report(tag, stratum, F, coords, over, module):
    n = F.n
    return SpectrumReport(
        algebra=tag,
        stratum=stratum,
        input={"kind": "point", "field": _field_describe(F), "coords": coords},
        quotient={
            "type": "MatrixOverField",
            "size": n,
            "field": _field_describe(F),
            "description": f"n x n matrices over {over}",
        },
        simple_module={"dimension": n, "over": _field_describe(F), "description": module},
        endomorphism={"description": f"the residue field ({_field_describe(F)})"},
        completely_prime=(n == 1),
        primitive=True,
    )


def _fiber_report(tag, stratum, F, value, coords, var="x"):
    if not F.is_finite():
        raise UnsupportedFiberEnumeration("fiber enumeration needs a finite residue field")
    n = F.n
    poly = Polynomial.binomial(F, n, value)
    fiber = []
    for g, e in factor_over_finite_field(poly):
        assert e == 1, "the fiber polynomial must be squarefree"
        fiber.append(
            {
                "generator": f"({'h' if var == 'x' else 'x'}, {g})",
                "quotient_field_degree": g.degree,
                "description": f"field of degree {g.degree} over the residue field",
            }
        )
    return SpectrumReport(
        algebra=tag,
        stratum=stratum,
        input={"kind": "point", "field": _field_describe(F), "coords": coords},
        quotient={
            "type": "Field",
            "description": f"one field per irreducible factor of {var}^{n} - {F.to_str(value)}",
        },
        simple_module={"description": "each fiber field is its own simple module"},
        endomorphism={"description": "the fiber field itself"},
        completely_prime=True,
        primitive=True,
        fiber=fiber,
    )


def _ce_stratum_report(tag, stratum, F, s0, t0, coords, search_budget):
    spec = CESpec(F, s0, t0)
    ce_rep = ce_classify(spec, search_budget=search_budget, want_units=False)
    n = F.n
    d = ce_rep.index
    if d is UNKNOWN:
        cp = UNKNOWN
        end = {"description": "division algebra of unresolved degree", "degree": UNKNOWN}
        mod = {"description": "simple module of the cyclic algebra", "dimension": UNKNOWN}
    else:
        cp = d == n
        end = {
            "description": (
                "the residue field" if d == 1 else f"division algebra of degree {d}"
            ),
            "degree": d,
        }
        mod = {
            "dimension": n * d,
            "over": _field_describe(F),
            "description": "row space E^d with the twisted matrix action",
        }
    return SpectrumReport(
        algebra=tag,
        stratum=stratum,
        input={"kind": "point", "field": _field_describe(F), "coords": coords},
        quotient={
            "type": "CEAlgebra",
            "spec": spec.describe(),
            "description": "central simple algebra of degree n over the residue field",
        },
        simple_module=mod,
        endomorphism=end,
        completely_prime=cp,
        primitive=True,
        ce_report=ce_rep,
    )


# --- atlas ---------------------------------------------------------------------


def residue_field(K, degree):
    """A degree-`degree` residue extension of the prime base field."""
    if degree == 1:
        return K
    if not isinstance(K, PrimeField):
        raise UnsupportedFiberEnumeration(
            "extension points over non-prime base fields are out of desk scope"
        )
    p = K.p
    mod = _find_irreducible(K, degree)
    return ExtensionField(p, mod, K.n, [K.q])


def _find_irreducible(K, degree):
    from .polys import Polynomial, factor_over_finite_field

    p = K.p
    for r in range(p**degree):
        coeffs, t = [], r
        for _ in range(degree):
            coeffs.append(t % p)
            t //= p
        coeffs.append(1)
        poly = Polynomial(K, coeffs)
        factors = factor_over_finite_field(poly)
        if len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == degree:
            return coeffs
    raise TooLarge("no irreducible polynomial found (impossible)")


def _frobenius_orbit_key(F, pair):
    if isinstance(F, PrimeField):
        return (F.rank(pair[0]), F.rank(pair[1]))
    best = None
    c1, c2 = pair
    for _ in range(F.degree):
        key = (F.rank(c1), F.rank(c2))
        if best is None or key < best:
            best = key
        c1, c2 = F.frobenius(c1), F.frobenius(c2)
    return best


def enumerate_spectrum(tag, field, max_ext_degree=2, search_budget=20000):
    """Classify every maximal point of residue degree <= bound; build the atlas."""
    if not field.is_finite():
        raise TooLarge("atlas enumeration needs a finite base field")
    point_data = []
    seen_cost = 0
    for e in range(1, max_ext_degree + 1):
        Fp = residue_field(field, e)
        size = Fp.order()
        seen_cost += size * size
        if seen_cost > ATLAS_POINT_BOUND:
            raise TooLarge("atlas point budget exceeded; lower the extension degree")
        seen = set()
        for r1 in range(size):
            c1 = Fp.unrank(r1)
            for r2 in range(size):
                c2 = Fp.unrank(r2)
                if tag == "B" and (Fp.is_zero(c1) or Fp.is_zero(c2)):
                    continue
                if tag == "CA" and Fp.is_zero(c2):
                    continue
                if e > 1:
                    d = _lcm(Fp.subfield_degree(c1), Fp.subfield_degree(c2))
                    if d != e:
                        continue
                    key = _frobenius_orbit_key(Fp, (c1, c2))
                    if key in seen:
                        continue
                    seen.add(key)
                prime = CentrePrime(tag, "point", ext_field=Fp, coords=(c1, c2))
                rep = classify_prime(prime, search_budget=search_budget)
                point_data.append((rep, Fp, c1, c2))
    reports = [pd[0] for pd in point_data]
    strata = {}
    for rep in reports:
        strata[rep.stratum] = strata.get(rep.stratum, 0) + 1
    atlas = {
        "algebra": tag,
        "field": field.spec(),
        "max_ext_degree": max_ext_degree,
        "point_count": len(reports),
        "strata_counts": strata,
        "points": reports,
    }
    atlas["height1"] = _atlas_height1(tag, field, max_ext_degree)
    atlas["edges"] = _atlas_edges(tag, field, atlas, point_data)
    _atlas_assertions(tag, field, atlas)
    return atlas


def _atlas_height1(tag, field, max_deg):
    """The named height-1 primes plus enumerable members of the open stratum."""
    out = [{"generator": g, "named": True} for g in _NAMED_HEIGHT1[tag]]
    if tag != "A1":
        return out
    # univariate members of the open stratum: irreducible f(t), g(r), deg <= max_deg
    for var in ("t", "r"):
        for deg in range(1, max_deg + 1):
            for coeffs in _monic_polys(field, deg):
                if deg == 1 and field.is_zero(coeffs[0]):
                    continue  # that is the named prime
                poly = Polynomial(field, list(coeffs) + [field.one()])
                factors = factor_over_finite_field(poly)
                if len(factors) == 1 and factors[0][1] == 1:
                    out.append(
                        {
                            "generator": f"{var}-poly",
                            "coeffs": [field.to_str(c) for c in poly.coeffs],
                            "var": var,
                            "poly": list(poly.coeffs),
                            "named": False,
                        }
                    )
    # the hyperbola family rt - c, excluding the s-associate value
    # ((s) = (rt - c*) with c* = (-1)^n (q-1)^(-n))
    sign = field.one() if field.n % 2 == 0 else field.neg(field.one())
    excluded = field.mul(
        sign, field.inv(field.pow(field.sub(field.q, field.one()), field.n))
    )
    for c in field.elements():
        if field.is_zero(c) or field.eq(c, excluded):
            continue
        out.append(
            {"generator": "rt-c", "c": field.to_str(c), "c_value": c, "named": False}
        )
    return out


def _monic_polys(field, deg):
    size = field.order()
    for r in range(size**deg):
        coeffs, t = [], r
        for _ in range(deg):
            coeffs.append(field.unrank(t % size))
            t //= size
        yield coeffs


def _atlas_edges(tag, field, atlas, point_data):
    """Solid containment edges plus observed containments for dotted families."""
    edges = []
    if tag == "A":
        for idx, (rep, Fp, c1, c2) in enumerate(point_data):
            name = f"point{idx}"
            if rep.stratum == "(x,h)":
                edges.append(("(x)", name, "solid"))
                edges.append(("(h)", name, "solid"))
            elif rep.stratum == "X":
                edges.append(("(x)", name, "solid"))
            elif rep.stratum == "H":
                edges.append(("(h)", name, "solid"))
        edges.append(("zero", "(x)", "solid"))
        edges.append(("zero", "(h)", "solid"))
        return edges
    if tag != "A1":
        return edges
    lift = _lift_map(field, point_data)
    for idx, (rep, Fp, r0, t0) in enumerate(point_data):
        name = f"point{idx}"
        stratum = rep.stratum
        if stratum == "(t,r)":
            edges.append(("(t)", name, "solid"))
            edges.append(("(r)", name, "solid"))
        elif stratum == "T":
            edges.append(("(t)", name, "solid"))
        elif stratum == "R":
            edges.append(("(r)", name, "solid"))
        elif stratum == "H''":
            edges.append(("(h)", name, "solid"))
        for h1 in atlas["height1"]:
            if h1.get("named"):
                continue
            if _generator_vanishes(field, h1, Fp, r0, t0, lift):
                edges.append((_h1_name(h1, field), name, "observed"))
    for g in ("t", "r", "h"):
        edges.append(("zero", f"({g})", "solid"))
    return edges


def _lift_map(field, point_data):
    """Base-field value -> residue-field value, per residue field seen."""
    if not isinstance(field, PrimeField):
        return None

    def lift(Fp, value):
        return Fp.from_int(value)

    return lift


def _h1_name(h1, field):
    if h1.get("generator") == "rt-c":
        return f"rt-{h1['c']}"
    return f"{h1['var']}-poly-{','.join(field.to_str(c) for c in h1['poly'])}"


def _generator_vanishes(field, h1, Fp, r0, t0, lift):
    if lift is None:
        return False
    if h1.get("generator") == "rt-c":
        return Fp.eq(Fp.mul(r0, t0), lift(Fp, h1["c_value"]))
    val = t0 if h1["var"] == "t" else r0
    acc = Fp.zero()
    for coeff in reversed(h1["poly"]):
        acc = Fp.add(Fp.mul(acc, val), lift(Fp, coeff))
    return Fp.is_zero(acc)


def _atlas_assertions(tag, field, atlas):
    """The forbidden-containment facts behind the diagram, checked concretely."""
    if tag != "A1":
        return
    F = field
    n = F.n
    # s is the nonzero scalar (q-1)^(-n) in the t-, r-, and (t,r)-quotients,
    # so h is a unit there and (h) is incomparable with those strata
    s_val = F.inv(F.pow(F.sub(F.q, F.one()), n))
    assert not F.is_zero(s_val)
    atlas.setdefault("assertions", []).append(
        "s = (q-1)^(-n) != 0 in the t/r/(t,r) quotients: (h) incomparable with T, R, (t,r)"
    )
    # t acts invertibly on every R-stratum quotient (t0 != 0 by construction)
    for rep in atlas["points"]:
        if rep.stratum == "R":
            t0 = rep.input["coords"]["t"]
            assert t0 != "0"
        if rep.stratum == "T":
            assert rep.input["coords"]["r"] != "0"
    atlas["assertions"].append(
        "(t) not below any R-member and (r) not below any T-member (coordinates nonzero)"
    )


def atlas_to_dot(atlas):
    lines = ["digraph spectrum {", "  rankdir=BT;"]
    lines.append('  zero [label="{0}"];')
    for h1 in atlas["height1"]:
        if h1.get("named"):
            g = h1["generator"]
            lines.append(f'  "({g})" [label="({g})"];')
    for idx, rep in enumerate(atlas["points"]):
        label = f"{rep.stratum}\\n{rep.input['coords']}"
        lines.append(f'  point{idx} [label="{label}"];')
    for src, dst, style in atlas["edges"]:
        extra = ' [style=dotted]' if style == "observed" else ""
        lines.append(f'  "{src}" -> "{dst}"{extra};')
    lines.append("}")
    return "\n".join(lines)
