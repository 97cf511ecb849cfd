"""Exact arithmetic in the coefficient ring of the calculator.

Elements are integer polynomials in graded generators of two kinds:

* ``g_n`` (n >= 1), degree 2n, the designated projective-space classes;
* ``A(j;key)`` symbols, formal placeholders for augmentation values that
  the operational calculus leaves undetermined.

The ring is modeled as the free commutative graded ring on these
generators.  That is a modeling assumption: everything downstream only
needs a torsion-free graded ring with designated ``cp`` classes.
"""

from __future__ import annotations

# Generator keys.
#   ('g', n)            -> g_n, degree 2n
#   ('A', j, base, deg) -> A(j;base), degree deg (even), j >= 1
GenKey = tuple

_A_BASE_WHITELIST_NOTE = "base keys are 'P' or 'Z(n,r)'/'Z(n,s)'"


def _gen_degree(key: GenKey) -> int:
    if key[0] == "g":
        return 2 * key[1]
    return key[3]


def _gen_name(key: GenKey) -> str:
    if key[0] == "g":
        return "g%d" % key[1]
    return "A(%d;%s)" % (key[1], key[2])


def _gen_sort_key(key: GenKey):
    # g's first by index, then A's by (degree, rendered name)
    if key[0] == "g":
        return (0, key[1], "")
    return (1, key[3], _gen_name(key))


def base_key_degree(base: str) -> int:
    """Degree of the atom named by an A-symbol base key."""
    if base == "P":
        return 2
    if base.startswith("Z(") and base.endswith(")"):
        inner = base[2:-1]
        n_text, flavor = inner.split(",")
        n = int(n_text)
        if n >= 1 and flavor in ("r", "s"):
            return 2 * n
    raise ValueError("unknown A-symbol base %r (%s)" % (base, _A_BASE_WHITELIST_NOTE))


def aug_symbol_key(j: int, base: str) -> GenKey:
    """Deterministic generator key for the augmentation symbol A(j;base).

    Degree bookkeeping: applying the degree-raising operation j times to
    an atom of degree d gives 2j + d.
    """
    if j < 1:
        raise ValueError("A-symbol star depth must be >= 1")
    return ("A", j, base, 2 * j + base_key_degree(base))


class CoeffElement:
    """Sparse polynomial: monomial -> nonzero int.

    A monomial is a sorted tuple of (generator key, exponent >= 1) pairs.
    Instances are treated as immutable once built.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # --- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "CoeffElement":
        return CoeffElement()

    @staticmethod
    def integer(n: int) -> "CoeffElement":
        return CoeffElement({(): n}) if n else CoeffElement()

    @staticmethod
    def gen(key: GenKey) -> "CoeffElement":
        return CoeffElement({((key, 1),): 1})

    # --- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return CoeffElement(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return CoeffElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = CoeffElement.integer(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CoeffElement.integer(other)
        if not isinstance(other, CoeffElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # --- grading --------------------------------------------------------

    def degrees(self) -> set:
        return {_mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """The common degree, None for 0; inhomogeneous input is an error."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("inhomogeneous element has no degree: %s" % self)
        return ds.pop()

    def homogeneous_component(self, d: int) -> "CoeffElement":
        return CoeffElement(
            {m: c for m, c in self.terms.items() if _mono_degree(m) == d}
        )

    # --- queries --------------------------------------------------------

    def constant(self) -> int:
        return self.terms.get((), 0)

    def as_int(self):
        """The integer value if the element is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def aug_symbols(self) -> list:
        """Sorted list of A-symbol keys appearing anywhere."""
        seen = set()
        for mono in self.terms:
            for key, _ in mono:
                if key[0] == "A":
                    seen.add(key)
        return sorted(seen, key=_gen_sort_key)

    def has_aug_symbols(self) -> bool:
        return any(key[0] == "A" for mono in self.terms for key, _ in mono)

    def substitute(self, assignments: dict) -> "CoeffElement":
        """Replace A-symbols by elements; keys are generator key tuples.

        Every assigned value must be zero or homogeneous of the symbol's
        degree, so substitution preserves the grading.
        """
        for key, value in assignments.items():
            if key[0] != "A":
                raise ValueError("only A-symbols may be substituted: %r" % (key,))
            value = _coerce(value)
            vdeg = value.degree()
            if vdeg is not None and vdeg != key[3]:
                raise ValueError(
                    "degree mismatch for %s: symbol degree %d, value degree %d"
                    % (_gen_name(key), key[3], vdeg)
                )
        out = CoeffElement.zero()
        for mono, c in self.terms.items():
            piece = CoeffElement.integer(c)
            for key, exp in mono:
                if key in assignments:
                    piece = piece * (_coerce(assignments[key]) ** exp)
                else:
                    piece = piece * (CoeffElement.gen(key) ** exp)
            out = out + piece
        return out

    # --- rendering ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(),
            key=lambda kv: (_mono_degree(kv[0]), _mono_sort_key(kv[0])),
        )
        parts = []
        for idx, (mono, c) in enumerate(items):
            body = _mono_str(mono)
            mag = abs(c)
            if body:
                text = body if mag == 1 else "%d*%s" % (mag, body)
            else:
                text = str(mag)
            if idx == 0:
                parts.append("-" + text if c < 0 else text)
            else:
                parts.append((" - " if c < 0 else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return "CoeffElement(%s)" % self


def _coerce(value) -> CoeffElement:
    if isinstance(value, CoeffElement):
        return value
    if isinstance(value, int):
        return CoeffElement.integer(value)
    raise TypeError("cannot coerce %r into the coefficient ring" % (value,))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for key, exp in m2:
        acc[key] = acc.get(key, 0) + exp
    return tuple(sorted(acc.items(), key=lambda kv: _gen_sort_key(kv[0])))


def _mono_degree(mono) -> int:
    return sum(_gen_degree(key) * exp for key, exp in mono)


def _mono_sort_key(mono):
    return tuple((_gen_sort_key(key), exp) for key, exp in mono)


def _mono_str(mono) -> str:
    factors = []
    for key, exp in mono:
        name = _gen_name(key)
        factors.append(name if exp == 1 else "%s^%d" % (name, exp))
    return "*".join(factors)


ZERO = CoeffElement.zero()
ONE = CoeffElement.integer(1)


def cp(n: int) -> CoeffElement:
    """The designated degree-2n projective-space class; cp(0) = 1."""
    if n < 0:
        raise ValueError("cp index must be >= 0")
    if n == 0:
        return ONE
    return CoeffElement.gen(("g", n))


def aug_symbol(j: int, base: str) -> CoeffElement:
    return CoeffElement.gen(aug_symbol_key(j, base))


def aug_symbol_name(key: GenKey) -> str:
    return _gen_name(key)


# --- parsing -----------------------------------------------------------


class CoeffParseError(ValueError):
    pass


class _Scanner:
    """Shared tokenizer; also used by the expression parsers downstream."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def startswith(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def take(self, token: str) -> bool:
        if self.startswith(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.take(token):
            raise CoeffParseError(
                "expected %r at position %d in %r" % (token, self.pos, self.text)
            )

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] in ("+", "-"):
            raise CoeffParseError(
                "expected integer at position %d in %r" % (start, self.text)
            )
        return int(self.text[start:self.pos])

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_coeff(text: str) -> CoeffElement:
    """Parse the canonical text form, e.g. ``3*g1^2*g2 - A(1;P) + 2``."""
    sc = _Scanner(text)
    value = _parse_coeff_sum(sc)
    if not sc.done():
        raise CoeffParseError("trailing input at position %d in %r" % (sc.pos, text))
    return value


def _parse_coeff_sum(sc: _Scanner) -> CoeffElement:
    negate = False
    if sc.take("-"):
        negate = True
    else:
        sc.take("+")
    value = _parse_coeff_product(sc)
    if negate:
        value = -value
    while True:
        if sc.take("+"):
            value = value + _parse_coeff_product(sc)
        elif sc.take("-"):
            value = value - _parse_coeff_product(sc)
        else:
            return value


def _parse_coeff_product(sc: _Scanner) -> CoeffElement:
    value = _parse_coeff_power(sc)
    while sc.take("*"):
        value = value * _parse_coeff_power(sc)
    return value


def _parse_coeff_power(sc: _Scanner) -> CoeffElement:
    value = parse_coeff_atom(sc)
    if sc.take("^"):
        exp = sc.integer()
        if exp < 0:
            raise CoeffParseError("negative exponent in coefficient")
        value = value ** exp
    return value


def parse_coeff_atom(sc: _Scanner) -> CoeffElement:
    """One coefficient atom: integer, g<n>, A(j;base), or parenthesis."""
    ch = sc.peek()
    if ch == "(":
        sc.expect("(")
        value = _parse_coeff_sum(sc)
        sc.expect(")")
        return value
    if ch.isdigit():
        return CoeffElement.integer(sc.integer())
    if sc.startswith("g"):
        sc.take("g")
        n = sc.integer()
        if n < 1:
            raise CoeffParseError("g-generator index must be >= 1")
        return cp(n)
    if sc.startswith("A("):
        sc.take("A(")
        j = sc.integer()
        sc.expect(";")
        base = _parse_base_key(sc)
        sc.expect(")")
        if j < 1:
            raise CoeffParseError("A-symbol star depth must be >= 1")
        return aug_symbol(j, base)
    raise CoeffParseError(
        "expected coefficient atom at position %d in %r" % (sc.pos, sc.text)
    )


def is_coeff_atom_start(sc: _Scanner) -> bool:
    ch = sc.peek()
    return ch.isdigit() or sc.startswith("g") or sc.startswith("A(")


def _parse_base_key(sc: _Scanner) -> str:
    if sc.take("P"):
        return "P"
    if sc.take("Z("):
        n = sc.integer()
        sc.expect(",")
        if sc.take("r"):
            flavor = "r"
        elif sc.take("s"):
            flavor = "s"
        else:
            raise CoeffParseError("flavor must be r or s")
        sc.expect(")")
        if n < 1:
            raise CoeffParseError("Z index must be >= 1")
        return "Z(%d,%s)" % (n, flavor)
    raise CoeffParseError("unknown A-symbol base at position %d" % sc.pos)
