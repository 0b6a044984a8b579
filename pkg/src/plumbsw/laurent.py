"""Sparse multivariable Laurent polynomials with rational exponents."""

from __future__ import annotations

from fractions import Fraction


def _exp(e) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in e)


class Laurent:
    """Finite sum of coef * t^exp, exponents are tuples of Fractions."""

    __slots__ = ('terms', 'nvars')

    def __init__(self, terms=None, nvars: int | None = None):
        self.terms: dict[tuple[Fraction, ...], int | Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    e = _exp(e)
                    self.terms[e] = self.terms.get(e, 0) + c
                    if not self.terms[e]:
                        del self.terms[e]
        if nvars is None:
            nvars = len(next(iter(self.terms))) if self.terms else 0
        self.nvars = nvars

    @classmethod
    def monomial(cls, e, c=1) -> 'Laurent':
        return cls({_exp(e): c}, len(e))

    @classmethod
    def zero(cls, nvars: int) -> 'Laurent':
        return cls(None, nvars)

    @classmethod
    def one(cls, nvars: int) -> 'Laurent':
        return cls({(Fraction(0),) * nvars: 1}, nvars)

    def copy(self) -> 'Laurent':
        out = Laurent(None, self.nvars)
        out.terms = dict(self.terms)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def add_term(self, e, c) -> None:
        """In-place accumulation."""
        if not c:
            return
        v = self.terms.get(e, 0) + c
        if v:
            self.terms[e] = v
        else:
            self.terms.pop(e, None)

    def __add__(self, other: 'Laurent') -> 'Laurent':
        out = self.copy()
        for e, c in other.terms.items():
            out.add_term(e, c)
        out.nvars = max(self.nvars, other.nvars)
        return out

    def __neg__(self) -> 'Laurent':
        out = Laurent(None, self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: 'Laurent') -> 'Laurent':
        return self + (-other)

    def scale(self, c) -> 'Laurent':
        out = Laurent(None, self.nvars)
        if c:
            out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def shift(self, e) -> 'Laurent':
        e = _exp(e)
        out = Laurent(None, self.nvars)
        out.terms = {tuple(x + y for x, y in zip(k, e)): v for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return self.scale(other)
        out = Laurent(None, max(self.nvars, other.nvars))
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.add_term(tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        return out

    __rmul__ = __mul__

    def at_one(self):
        return sum(self.terms.values(), 0)

    def truncate(self, bound) -> 'Laurent':
        """Keep exponents with every coordinate <= bound."""
        out = Laurent(None, self.nvars)
        out.terms = {e: c for e, c in self.terms.items() if all(x <= bound for x in e)}
        return out

    def sorted_terms(self) -> list[tuple[tuple[Fraction, ...], int | Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return '0'
        parts = []
        for e, c in self.sorted_terms():
            exp = ','.join(str(x) for x in e)
            parts.append(f"{c}*t^({exp})")
        return ' + '.join(parts)


def one_minus_monomial(v) -> Laurent:
    """1 - t^v."""
    n = len(v)
    return Laurent({(Fraction(0),) * n: 1, _exp(v): -1}, n)


class RationalSeriesForm:
    """sum_i numerator_i / prod_{v in denominators_i} (1 - t^v).

    Entries are keyed by a label (the subset I for hole forms); entries with
    the same label must share their denominators and are merged."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.entries: dict = {}  # label -> (numerator, denominators)

    def add(self, label, numerator: Laurent, denominators) -> None:
        dens = tuple(tuple(int(x) for x in v) for v in denominators)
        if label in self.entries:
            num, old = self.entries[label]
            if sorted(old) != sorted(dens):
                raise ValueError(f"denominator mismatch for {label}")
            numerator = num + numerator
        self.entries[label] = (numerator, dens)

    def items(self):
        return [(k, num, dens) for k, (num, dens) in self.entries.items() if num]

    def shift(self, e) -> 'RationalSeriesForm':
        out = RationalSeriesForm(self.nvars)
        for k, (num, dens) in self.entries.items():
            out.entries[k] = (num.shift(e), dens)
        return out

    def expand(self, bound) -> Laurent:
        """Taylor expansion keeping exponents with all coordinates <= bound."""
        out = Laurent(None, self.nvars)
        for _, num, dens in self.items():
            for e, c in num.terms.items():
                _expand_into(out, e, c, dens, bound)
        return out


def _expand_into(out: Laurent, e, c, dens, bound) -> None:
    if any(x > bound for x in e):
        return
    if not dens:
        out.add_term(e, c)
        return
    v, rest = dens[0], dens[1:]
    if any(x < 0 for x in v) or not any(x > 0 for x in v):
        raise ValueError("denominator exponents must be nonzero and nonnegative")
    cur = e
    while all(x <= bound for x in cur):
        _expand_into(out, cur, c, rest, bound)
        cur = tuple(x + y for x, y in zip(cur, v))
