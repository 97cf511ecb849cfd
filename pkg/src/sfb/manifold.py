"""Geometric front end: manifold expressions, isolated fixed-point data,
and the realizability decision with decomposition certificates.

A manifold expression is a tagged tuple:

    ("pc", n, flavor)      linear projective space P(C^n + V), n >= 1
    ("pt",)                the point
    ("union", ((w, M)...)) integer-weighted disjoint union
    ("prod", (Ms...))
    ("gamma", M)           twisted-bundle construction, r-flavored
    ("gammastar", M)       the s-flavored mate

Grammar:  msum := ['-'] mprod (('+'|'-') mprod)*
          mprod := mpow (('x'|'*') mpow)*
          mpow  := matom ['^' nonneg]
          matom := 'P(' n ',' flavor ')' | 'pt' | 'gamma(' msum ')'
                 | 'gammas(' msum ')' | integer | '(' msum ')'

A bare integer w means w disjoint points.
"""

from __future__ import annotations

from math import comb

from .coeff import CoeffElement, ONE, ZERO, _Scanner
from .phi import PhiElement, z_gen
from .terms import t_bar, t_gamma, t_int, t_prod, t_sum, t_zgen
from .engine import AUG


class NonIsolatedError(ValueError):
    """Fixed set has positive-dimensional components."""


class ManifoldParseError(ValueError):
    pass


# --- constructors ------------------------------------------------------------


def m_pc(n: int, flavor: str) -> tuple:
    if n < 1:
        raise ValueError("projective-space index must be >= 1")
    if flavor not in ("r", "s"):
        raise ValueError("flavor must be 'r' or 's'")
    return ("pc", n, flavor)


def m_point() -> tuple:
    return ("pt",)


def m_union(*weighted) -> tuple:
    return ("union", tuple((int(w), m) for w, m in weighted))


def m_prod(*ms) -> tuple:
    if not ms:
        return m_point()
    if len(ms) == 1:
        return ms[0]
    return ("prod", tuple(ms))


def m_gamma(m: tuple) -> tuple:
    return ("gamma", m)


def m_gammastar(m: tuple) -> tuple:
    return ("gammastar", m)


# --- translations ---------------------------------------------------------


def manifold_to_term(m: tuple) -> tuple:
    """The bordism class as an expression for the rewriting engine."""
    tag = m[0]
    if tag == "pc":
        return t_zgen(m[1], m[2])
    if tag == "pt":
        return t_int(1)
    if tag == "union":
        return t_sum(*(t_prod(t_int(w), manifold_to_term(sub)) for w, sub in m[1]))
    if tag == "prod":
        return t_prod(*(manifold_to_term(sub) for sub in m[1]))
    if tag == "gamma":
        return t_gamma("r", manifold_to_term(m[1]))
    if tag == "gammastar":
        return t_gamma("s", manifold_to_term(m[1]))
    raise ValueError("unknown manifold tag %r" % (tag,))


def aug_manifold(m: tuple) -> CoeffElement:
    """Class of the underlying manifold, action forgotten."""
    return AUG.aug(manifold_to_term(m))


def lambda_manifold(m: tuple, convention: str = "same") -> PhiElement:
    """Localized fixed-point image, computed structurally on the
    manifold expression (not by round-tripping through the engine)."""
    tag = m[0]
    if tag == "pc":
        return z_gen(m[1], m[2], convention)
    if tag == "pt":
        return PhiElement.one()
    if tag == "union":
        acc = PhiElement.zero()
        for w, sub in m[1]:
            acc = acc + lambda_manifold(sub, convention).scale(w)
        return acc
    if tag == "prod":
        acc = PhiElement.one()
        for sub in m[1]:
            acc = acc * lambda_manifold(sub, convention)
        return acc
    if tag in ("gamma", "gammastar"):
        flavor = "r" if tag == "gamma" else "s"
        inner = lambda_manifold(m[1], convention)
        abar = PhiElement.const(aug_manifold(m[1]))
        return PhiElement.euler(flavor, -1) * (inner - abar)
    raise ValueError("unknown manifold tag %r" % (tag,))


def gamma_fixed_semantics(m: tuple, star: bool = False) -> dict:
    """The three fixed-set contributions of the twisted-bundle
    construction: the original manifold with one extra normal line, the
    underlying manifold on the other side, and the correction copy of
    the sphere.  Their sum is the localized image of gamma(M)."""
    fl, co = ("s", "r") if star else ("r", "s")
    lam = lambda_manifold(m)
    abar = aug_manifold(m)
    fixed = PhiElement.euler(fl, -1) * lam
    free = PhiElement.euler(co, -1).scale(abar)
    correction = z_gen(1, "r").scale(-abar)
    return {
        "fixed_component": fixed,
        "free_quotient": free,
        "correction": correction,
        "total": fixed + free + correction,
    }


# --- isolated fixed-point data ---------------------------------------------


def fixed_data(m: tuple) -> dict:
    """Multiset of isolated fixed points as {(k, l): weight}; k counts
    r-flavored normal lines, l the s-flavored ones."""
    tag = m[0]
    if tag == "pt":
        return {(0, 0): 1}
    if tag == "pc":
        if m[1] != 1:
            raise NonIsolatedError(
                "P(C^%d+%s) has positive-dimensional fixed components" % (m[1], m[2])
            )
        return {(1, 0): 1, (0, 1): 1}
    if tag == "union":
        out = {}
        for w, sub in m[1]:
            for kl, c in fixed_data(sub).items():
                s = out.get(kl, 0) + w * c
                if s:
                    out[kl] = s
                else:
                    out.pop(kl, None)
        return out
    if tag == "prod":
        out = {(0, 0): 1}
        for sub in m[1]:
            nxt = {}
            for (k1, l1), c1 in out.items():
                for (k2, l2), c2 in fixed_data(sub).items():
                    kl = (k1 + k2, l1 + l2)
                    s = nxt.get(kl, 0) + c1 * c2
                    if s:
                        nxt[kl] = s
                    else:
                        nxt.pop(kl, None)
            out = nxt
        return out
    if tag in ("gamma", "gammastar"):
        raise NonIsolatedError(
            "the bundle construction has a non-isolated fixed set"
        )
    raise ValueError("unknown manifold tag %r" % (tag,))


def lambda_fixed(data: dict) -> PhiElement:
    """Localized image of isolated data: sum of w * e_r^-k e_s^-l."""
    acc = PhiElement.zero()
    for (k, l), w in data.items():
        acc = acc + PhiElement({(-k, -l, ()): CoeffElement.integer(w)})
    return acc


def fixed_data_to_json(data: dict) -> dict:
    points = [
        {"weight": w, "rho": k, "rho_star": l}
        for (k, l), w in sorted(data.items())
        if w
    ]
    return {"points": points}


def fixed_data_from_json(doc: dict) -> dict:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ValueError('fixed-point data must be {"points": [...]}')
    out = {}
    for p in doc["points"]:
        w = int(p["weight"])
        k = int(p["rho"])
        l = int(p["rho_star"])
        if k < 0 or l < 0:
            raise ValueError("normal-line counts must be >= 0")
        s = out.get((k, l), 0) + w
        if s:
            out[(k, l)] = s
        else:
            out.pop((k, l), None)
    return out


# --- realizability ----------------------------------------------------------


def realize(data: dict) -> dict:
    """Decide whether the data is the fixed-point set of a disjoint
    union of powers of the rotation sphere; emit the decomposition or
    the first binomial-row violation."""
    degrees = sorted({k + l for k, l in data})
    decomposition = []
    for n in degrees:
        a0 = data.get((n, 0), 0)
        for i in range(n + 1):
            expected = a0 * comb(n, i)
            actual = data.get((n - i, i), 0)
            if actual != expected:
                return {
                    "realizable": False,
                    "witness": {
                        "degree": n,
                        "index": i,
                        "expected": expected,
                        "actual": actual,
                    },
                }
        if a0:
            decomposition.append({"multiplicity": a0, "power": n})
    return {"realizable": True, "decomposition": decomposition}


def realize_iterative(data: dict) -> dict:
    """Same decision by the inductive subtraction: strip a_0 copies of
    the n-th sphere power, multiply by e_s to drop the degree, recurse;
    degree-0 data is a bare integer."""

    def decide(x: dict, n: int):
        if n == 0:
            extra = [kl for kl in x if kl != (0, 0)]
            if extra:
                return False, 0
            return True, x.get((0, 0), 0)
        a0 = x.get((n, 0), 0)
        y = {}
        for i in range(n + 1):
            w = x.get((n - i, i), 0) - a0 * comb(n, i)
            if w:
                y[(n - i, i)] = w
        if (n, 0) in y:
            return False, a0
        shifted = {(k, l - 1): w for (k, l), w in y.items()}
        ok, rest = decide(shifted, n - 1)
        return ok and rest == 0, a0

    by_degree = {}
    for (k, l), w in data.items():
        by_degree.setdefault(k + l, {})[(k, l)] = w
    decomposition = []
    for n in sorted(by_degree):
        ok, mult = decide(by_degree[n], n)
        if not ok:
            return {"realizable": False, "witness": {"degree": n}}
        if mult:
            decomposition.append({"multiplicity": mult, "power": n})
    return {"realizable": True, "decomposition": decomposition}


def decomposition_lambda(decomposition: list) -> PhiElement:
    sphere = z_gen(1, "r")
    acc = PhiElement.zero()
    for entry in decomposition:
        acc = acc + (sphere ** entry["power"]).scale(entry["multiplicity"])
    return acc


# --- cobordance ---------------------------------------------------------


def check_cobordant(m1: tuple, m2: tuple, convention: str = "same"):
    """(True | False | "unknown", detail).  Classes agree iff their
    localized images agree; differences living entirely in A-symbols
    cannot be decided without assignments."""
    diff = lambda_manifold(m1, convention) - lambda_manifold(m2, convention)
    if diff.is_zero():
        return True, None
    for mono, c in sorted(diff.terms.items()):
        for d in sorted(c.degrees()):
            comp = c.homogeneous_component(d)
            if not comp.has_aug_symbols():
                return False, {
                    "monomial": {"a": mono[0], "b": mono[1],
                                 "xs": [[n, fl] for n, fl in mono[2]]},
                    "coeff": str(comp),
                }
    return "unknown", {"difference": str(diff)}


# --- parsing and printing ---------------------------------------------------


def parse_manifold(text: str) -> tuple:
    sc = _Scanner(text)
    try:
        m = _parse_msum(sc)
    except ManifoldParseError:
        raise
    except ValueError as exc:
        # scanner-level and constructor-level failures surface uniformly
        raise ManifoldParseError(str(exc)) from None
    if not sc.done():
        raise ManifoldParseError(
            "trailing input at position %d in %r" % (sc.pos, text)
        )
    return m


def _parse_msum(sc: _Scanner) -> tuple:
    parts = []
    sign = -1 if sc.take("-") else 1
    if sign == 1:
        sc.take("+")
    parts.append((sign, _parse_mprod(sc)))
    while True:
        if sc.take("+"):
            parts.append((1, _parse_mprod(sc)))
        elif sc.take("-"):
            parts.append((-1, _parse_mprod(sc)))
        else:
            break
    if len(parts) == 1 and parts[0][0] == 1:
        return parts[0][1]
    out = []
    for sign, m in parts:
        if m[0] == "union" and len(m[1]) == 1:
            w, sub = m[1][0]
            out.append((sign * w, sub))
        else:
            out.append((sign, m))
    return ("union", tuple(out))


def _parse_mprod(sc: _Scanner) -> tuple:
    weight = 1
    factors = []
    while True:
        if sc.peek().isdigit():
            weight *= sc.integer()
        else:
            factors.append(_parse_mpow(sc))
        if sc.take("x") or sc.take("*"):
            continue
        break
    m = m_prod(*factors)
    if weight == 1:
        return m
    return ("union", ((weight, m),))


def _parse_mpow(sc: _Scanner) -> tuple:
    m = _parse_matom(sc)
    if sc.take("^"):
        exp = sc.integer()
        if exp < 0:
            raise ManifoldParseError("negative powers of manifolds are not defined")
        return m_prod(*([m] * exp))
    return m


def _parse_matom(sc: _Scanner) -> tuple:
    if sc.take("P("):
        n = sc.integer()
        sc.expect(",")
        if sc.take("r"):
            flavor = "r"
        elif sc.take("s"):
            flavor = "s"
        else:
            raise ManifoldParseError("flavor must be r or s at position %d" % sc.pos)
        sc.expect(")")
        if n < 1:
            raise ManifoldParseError("index >= 1 required")
        return m_pc(n, flavor)
    if sc.take("pt"):
        return m_point()
    if sc.take("gammas("):
        inner = _parse_msum(sc)
        sc.expect(")")
        return m_gammastar(inner)
    if sc.take("gamma("):
        inner = _parse_msum(sc)
        sc.expect(")")
        return m_gamma(inner)
    if sc.peek() == "(":
        sc.expect("(")
        inner = _parse_msum(sc)
        sc.expect(")")
        return inner
    raise ManifoldParseError(
        "expected manifold atom at position %d in %r" % (sc.pos, sc.text)
    )


def manifold_text(m: tuple) -> str:
    return _mtext(m, 0)


def _mtext(m: tuple, level: int) -> str:
    tag = m[0]
    if tag == "pc":
        return "P(%d,%s)" % (m[1], m[2])
    if tag == "pt":
        return "pt"
    if tag == "gamma":
        return "gamma(%s)" % _mtext(m[1], 0)
    if tag == "gammastar":
        return "gammas(%s)" % _mtext(m[1], 0)
    if tag == "prod":
        parts = [_mtext(sub, 1) for sub in m[1]]
        body = " x ".join(parts)
        return "(%s)" % body if level == 1 else body
    if tag == "union":
        chunks = []
        for w, sub in m[1]:
            body = _mtext(sub, 1)
            if w == 1:
                chunks.append(("+", body))
            elif w == -1:
                chunks.append(("-", body))
            else:
                sign = "+" if w > 0 else "-"
                chunks.append((sign, "%d*%s" % (abs(w), body)))
        out = ""
        for idx, (sign, body) in enumerate(chunks):
            if idx == 0:
                out = body if sign == "+" else "-" + body
            else:
                out += " %s %s" % (sign, body)
        return "(%s)" % out if level == 1 else out
    raise ValueError("unknown manifold tag %r" % (tag,))


# --- randomized checks for the quotient-ring identities -------------------


def random_manifold(rng, depth: int = 2) -> tuple:
    if depth <= 0:
        roll = rng.randrange(4)
        if roll == 0:
            return m_point()
        return m_pc(rng.randint(1, 3), rng.choice("rs"))
    roll = rng.randrange(6)
    if roll <= 1:
        return m_prod(random_manifold(rng, depth - 1), random_manifold(rng, depth - 1))
    if roll <= 3:
        return m_union(
            (rng.randint(-2, 2), random_manifold(rng, depth - 1)),
            (rng.randint(-2, 2), random_manifold(rng, depth - 1)),
        )
    if roll == 4:
        return m_gamma(random_manifold(rng, depth - 1))
    return m_gammastar(random_manifold(rng, depth - 1))


def verify_manifold_relations(samples: int = 200, seed: int = 0,
                              convention: str = "same") -> dict:
    """The quotient-side identities, checked on the localized images of
    random manifold expressions: the exchange identity
    gamma(x)(y - bar y) = (x - bar x) gamma(y), and the reordering
    identity with the corrected scalar coefficient."""
    import random as _random

    rng = _random.Random(seed)
    sphere = z_gen(1, "r", convention)
    checks = {"exchange": 0, "reorder_corrected": 0}
    failures = []
    for k in range(samples):
        x = random_manifold(rng, depth=2)
        y = random_manifold(rng, depth=2)
        lam_x = lambda_manifold(x, convention)
        lam_y = lambda_manifold(y, convention)
        xbar = PhiElement.const(aug_manifold(x))
        ybar = PhiElement.const(aug_manifold(y))
        for build in (m_gamma, m_gammastar):
            gx = lambda_manifold(build(x), convention)
            gy = lambda_manifold(build(y), convention)
            if (gx * (lam_y - ybar) - (lam_x - xbar) * gy).is_zero():
                checks["exchange"] += 1
            else:
                failures.append(("exchange", k))
        sg = lambda_manifold(m_gammastar(m_gamma(x)), convention)
        gs = lambda_manifold(m_gamma(m_gammastar(x)), convention)
        coeff = aug_manifold(m_gammastar(x))
        if (sg - gs - sphere.scale(coeff)).is_zero():
            checks["reorder_corrected"] += 1
        else:
            failures.append(("reorder_corrected", k))
    return {
        "samples": samples,
        "seed": seed,
        "checks": checks,
        "failures": failures,
        "ok": not failures,
    }
