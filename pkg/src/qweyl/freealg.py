"""Free associative algebras with rewrite-rule presentations.

Elements are finite sums of words in named generators with exact scalar
coefficients.  A presentation fixes a weighted degree-lexicographic
monomial order, a list of rewrite rules oriented along that order
(which guarantees termination), an optional star structure, and drives
normal forms, relation checking and diamond-lemma ambiguity checking.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coeff import Scalar
from .errors import BadRule, NoStar, StepLimit
from .report import Report, ReportItem

__all__ = [
    "Generator",
    "Element",
    "RewriteRule",
    "Presentation",
    "Morphism",
    "Ambiguity",
    "default_step_limit",
]

Word = Tuple[int, ...]

DEFAULT_STEP_LIMIT = 10 ** 6


def default_step_limit() -> int:
    """Reduction-step bound; QWEYL_STEP_LIMIT overrides the default 10^6."""
    env = os.environ.get("QWEYL_STEP_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_STEP_LIMIT


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    weight: int = 1


class Element:
    """A finite formal sum of words with coefficients in the scalar ring.

    Bound to its presentation for naming, ordering and reduction; the
    product is the free concatenation product (no reduction applied).
    """

    __slots__ = ("pres", "terms")

    def __init__(self, pres: "Presentation", terms: Dict[Word, object]):
        self.pres = pres
        clean = {}
        for w, c in terms.items():
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    # -- ring operations (free algebra) --------------------------------

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.pres is not self.pres:
                raise ValueError("elements belong to different presentations")
            return other
        coeff = self.pres.coerce_coeff(other)
        if coeff is None:
            return None
        return Element(self.pres, {(): coeff})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            n = terms.get(w)
            n = c if n is None else n + c
            if n:
                terms[w] = n
            else:
                terms.pop(w, None)
        return Element(self.pres, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Element(self.pres, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            coeff = self.pres.coerce_coeff(other)
            if coeff is None:
                return NotImplemented
            return Element(self.pres,
                           {w: c * coeff for w, c in self.terms.items()})
        if other.pres is not self.pres:
            raise ValueError("elements belong to different presentations")
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                p = c1 * c2
                n = terms.get(w)
                n = p if n is None else n + p
                if n:
                    terms[w] = n
                else:
                    terms.pop(w, None)
        return Element(self.pres, terms)

    def __rmul__(self, other):
        coeff = self.pres.coerce_coeff(other)
        if coeff is None:
            return NotImplemented
        return Element(self.pres, {w: coeff * c for w, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined on elements")
        out = self.pres.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.pres is other.pres and self.terms == other.terms
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.terms == coerced.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- convenience ----------------------------------------------------

    def normal_form(self, step_limit: Optional[int] = None) -> "Element":
        return self.pres.normal_form(self, step_limit=step_limit)

    def star(self) -> "Element":
        return self.pres.apply_star(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.pres.word_key(t[0]))

    def coefficient(self, names: Sequence[str]):
        w = tuple(self.pres.gen(n).id if isinstance(n, str) else n for n in names)
        return self.terms.get(w, self.pres.coeff_zero)

    def map_coefficients(self, fn):
        return Element(self.pres, {w: fn(c) for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            body = self.pres.format_term(w, c)
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append("- " + body[1:])
            else:
                pieces.append("+ " + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"<{self.pres.name}: {self}>"

    def to_json(self):
        return {
            "terms": [
                {"word": [self.pres.generators[g].name for g in w],
                 "coeff": str(c)}
                for w, c in self.sorted_terms()
            ]
        }


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element
    name: str = ""


@dataclass
class Ambiguity:
    """An overlap or inclusion of two rule left-hand sides that fails to resolve."""

    word: Word
    rule1: int
    rule2: int
    nf1: Element
    nf2: Element

    def residual(self) -> Element:
        return self.nf1 - self.nf2


class Presentation:
    """Generators + monomial order + rewrite rules + optional star structure.

    Generators are added in ascending precedence; the word order is
    weighted degree-lexicographic.  Rules must strictly decrease that
    order (checked on construction), so every reduction terminates.
    """

    def __init__(self, name: str, coeff_one=None):
        self.name = name
        self.generators: List[Generator] = []
        self._by_name: Dict[str, Generator] = {}
        self.rules: List[RewriteRule] = []
        self._rules_by_first: Dict[int, List[int]] = {}
        self.star_images: Optional[Dict[int, "Element"]] = None
        self.inverses: Dict[int, int] = {}
        self.display_relations: List[Tuple[str, "Element", "Element"]] = []
        self.coeff_one = coeff_one if coeff_one is not None else Scalar.one()
        self.coeff_zero = self.coeff_one - self.coeff_one

    # -- construction ---------------------------------------------------

    def add_generator(self, name: str, weight: int = 1) -> "Element":
        if name in self._by_name:
            raise ValueError(f"duplicate generator name {name!r}")
        if weight < 1:
            raise ValueError("generator weight must be a positive integer")
        g = Generator(len(self.generators), name, weight)
        self.generators.append(g)
        self._by_name[name] = g
        return self.gen_element(name)

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def has_gen(self, name: str) -> bool:
        return name in self._by_name

    def gen_element(self, name: str) -> "Element":
        return Element(self, {(self.gen(name).id,): self.coeff_one})

    def one(self) -> "Element":
        return Element(self, {(): self.coeff_one})

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, *parts) -> "Element":
        """Build coeff * word from (coeff, [names]) or just a word of names."""
        out = self.zero()
        for part in parts:
            coeff, names = part if isinstance(part, tuple) else (self.coeff_one, part)
            w = tuple(self.gen(n).id for n in names)
            out = out + Element(self, {w: self.coerce_coeff(coeff)})
        return out

    def coerce_coeff(self, v):
        if type(v) is type(self.coeff_one):
            return v
        out = self.coeff_one * v
        if out is NotImplemented:
            return None
        return out

    def word_from_names(self, names: Sequence[str]) -> Word:
        return tuple(self.gen(n).id for n in names)

    def add_rule(self, lhs_names: Sequence[str], rhs: "Element", name: str = ""):
        lhs = self.word_from_names(lhs_names)
        if not lhs:
            raise BadRule("empty rule left-hand side")
        for r in self.rules:
            if r.lhs == lhs:
                raise BadRule(f"duplicate rule left-hand side {self.format_word(lhs)}")
        key = self.word_key(lhs)
        for w in rhs.terms:
            if self.word_key(w) >= key:
                raise BadRule(
                    f"rule {self.format_word(lhs)} -> {rhs} does not decrease the order"
                    f" (offending word {self.format_word(w)})")
        rule = RewriteRule(lhs, rhs, name or self.format_word(lhs))
        idx = len(self.rules)
        self.rules.append(rule)
        self._rules_by_first.setdefault(lhs[0], []).append(idx)

    def add_display_relation(self, name: str, lhs: "Element", rhs: "Element"):
        self.display_relations.append((name, lhs, rhs))

    def set_star(self, images: Dict[str, "Element"]):
        """Star images per generator, extended antilinearly and antimultiplicatively."""
        self.star_images = {self.gen(n).id: e for n, e in images.items()}

    def mark_inverse(self, gname: str, invname: str):
        g, gi = self.gen(gname), self.gen(invname)
        self.inverses[g.id] = gi.id
        self.inverses[gi.id] = g.id

    # -- monomial order ---------------------------------------------------

    def word_weight(self, w: Word) -> int:
        return sum(self.generators[g].weight for g in w)

    def word_key(self, w: Word):
        return (self.word_weight(w), w)

    # Generator ids are assigned in ascending precedence, so the id tuple
    # itself is the lexicographic tie-break.

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        out = []
        run_name, run = None, 0
        for g in w:
            nm = self.generators[g].name
            if nm == run_name:
                run += 1
            else:
                if run_name is not None:
                    out.append(run_name if run == 1 else f"{run_name}^{run}")
                run_name, run = nm, 1
        out.append(run_name if run == 1 else f"{run_name}^{run}")
        return " ".join(out)

    def format_term(self, w: Word, c) -> str:
        word = self.format_word(w)
        if not w:
            cs = str(c)
            return cs if _is_simple_coeff(cs) else f"({cs})"
        if c == self.coeff_one:
            return word
        if c == -self.coeff_one:
            return f"-{word}"
        cs = str(c)
        if _is_simple_coeff(cs):
            return f"{cs} {word}"
        return f"({cs}) {word}"

    # -- rewriting --------------------------------------------------------

    def _find_redex(self, w: Word):
        rbf = self._rules_by_first
        n = len(w)
        for pos in range(n):
            hits = rbf.get(w[pos])
            if not hits:
                continue
            for idx in hits:
                lhs = self.rules[idx].lhs
                if w[pos:pos + len(lhs)] == lhs:
                    return pos, idx
        return None

    def normal_form(self, e: "Element", step_limit: Optional[int] = None) -> "Element":
        limit = step_limit if step_limit is not None else default_step_limit()
        steps = 0
        acc: Dict[Word, object] = {}
        pending = list(e.terms.items())
        while pending:
            w, c = pending.pop()
            hit = self._find_redex(w)
            if hit is None:
                n = acc.get(w)
                n = c if n is None else n + c
                if n:
                    acc[w] = n
                else:
                    acc.pop(w, None)
                continue
            steps += 1
            if steps > limit:
                raise StepLimit(
                    f"normal form exceeded {limit} reduction steps in {self.name}")
            pos, idx = hit
            rule = self.rules[idx]
            pre, post = w[:pos], w[pos + len(rule.lhs):]
            for rw, rc in rule.rhs.terms.items():
                pending.append((pre + rw + post, c * rc))
        return Element(self, acc)

    def check_relation(self, lhs: "Element", rhs: "Element",
                       step_limit: Optional[int] = None):
        """True iff normal_form(lhs - rhs) vanishes; the residual is returned too."""
        residual = self.normal_form(lhs - rhs, step_limit=step_limit)
        return residual.is_zero(), residual

    def overlap_check(self, maxlen: int, step_limit: Optional[int] = None
                      ) -> List[Ambiguity]:
        """All overlap/inclusion ambiguities with word length <= maxlen
        whose two one-step reductions have different normal forms."""
        longest = max((len(r.lhs) for r in self.rules), default=0)
        if maxlen < longest:
            raise ValueError(f"maxlen {maxlen} is below the longest rule lhs {longest}")
        bad: List[Ambiguity] = []
        seen = set()
        for i1, r1 in enumerate(self.rules):
            for i2, r2 in enumerate(self.rules):
                L1, L2 = r1.lhs, r2.lhs
                # overlap: proper suffix of L1 equals proper prefix of L2
                for k in range(1, min(len(L1), len(L2))):
                    if L1[len(L1) - k:] == L2[:k]:
                        w = L1 + L2[k:]
                        if len(w) > maxlen or (i1, i2, w, 0) in seen:
                            continue
                        seen.add((i1, i2, w, 0))
                        red1 = r1.rhs * Element(self, {L2[k:]: self.coeff_one})
                        red2 = Element(self, {L1[:len(L1) - k]: self.coeff_one}) * r2.rhs
                        self._record_if_bad(bad, w, i1, i2, red1, red2, step_limit)
                # inclusion: L2 occurs strictly inside L1
                if i1 != i2 and len(L2) < len(L1) and len(L1) <= maxlen:
                    for pos in range(len(L1) - len(L2) + 1):
                        if L1[pos:pos + len(L2)] == L2:
                            red1 = r1.rhs
                            mid = (Element(self, {L1[:pos]: self.coeff_one}) * r2.rhs
                                   * Element(self, {L1[pos + len(L2):]: self.coeff_one}))
                            self._record_if_bad(bad, L1, i1, i2, red1, mid, step_limit)
        return bad

    def _record_if_bad(self, bad, w, i1, i2, red1, red2, step_limit):
        nf1 = self.normal_form(red1, step_limit=step_limit)
        nf2 = self.normal_form(red2, step_limit=step_limit)
        if nf1 != nf2:
            bad.append(Ambiguity(w, i1, i2, nf1, nf2))

    # -- star ---------------------------------------------------------------

    def apply_star(self, e: "Element") -> "Element":
        """Antilinear antimultiplicative extension of the generator star map."""
        if self.star_images is None:
            raise NoStar(f"presentation {self.name} has no star structure")
        out = self.zero()
        for w, c in e.terms.items():
            piece = Element(self, {(): _conj(c)})
            for g in reversed(w):
                piece = piece * self.star_images[g]
            out = out + piece
        return out

    def star_consistency(self, step_limit: Optional[int] = None):
        """Check that star maps every rule into the ideal (NF of star(lhs-rhs) = 0).

        Returns the list of (rule name, residual) failures; empty means the
        star structure is compatible with the relations.
        """
        if self.star_images is None:
            raise NoStar(f"presentation {self.name} has no star structure")
        failures = []
        for r in self.rules:
            rel = Element(self, {r.lhs: self.coeff_one}) - r.rhs
            residual = self.normal_form(self.apply_star(rel), step_limit=step_limit)
            if not residual.is_zero():
                failures.append((r.name, residual))
        return failures

    def confluence_report(self, maxlen: int) -> Report:
        amb = self.overlap_check(maxlen)
        items = [ReportItem(name=f"ambiguity {self.format_word(a.word)}",
                            passed=False, residual=str(a.residual()))
                 for a in amb]
        if not items:
            items = [ReportItem(name=f"all ambiguities to length {maxlen} resolve",
                                passed=True)]
        return Report(suite="confluence",
                      inputs={"algebra": self.name, "maxlen": maxlen},
                      items=items)


def _conj(c):
    return c.conjugate()


def _is_simple_coeff(cs: str) -> bool:
    # a single signed monomial renders without parentheses
    core = cs[1:] if cs.startswith("-") else cs
    return ("+" not in core and "- " not in core and not core.startswith("("))


@dataclass
class Morphism:
    """An algebra map given on generators; verified, never assumed."""

    source: Presentation
    target: Presentation
    images: Dict[str, Element]
    name: str = "morphism"

    def apply(self, e: Element) -> Element:
        if e.pres is not self.source:
            raise ValueError("element is not in the source presentation")
        out = self.target.zero()
        for w, c in e.terms.items():
            piece = Element(self.target, {(): self.target.coerce_coeff(c)})
            for g in w:
                piece = piece * self.images[self.source.generators[g].name]
            out = out + piece
        return out

    def verify(self, step_limit: Optional[int] = None) -> Report:
        """Check every source rule maps to zero in the target."""
        items = []
        for r in self.source.rules:
            rel = (Element(self.source, {r.lhs: self.source.coeff_one}) - r.rhs)
            residual = self.target.normal_form(self.apply(rel), step_limit=step_limit)
            items.append(ReportItem(
                name=f"{self.source.format_word(r.lhs)} -> rhs",
                passed=residual.is_zero(),
                residual=str(residual)))
        return Report(suite="verify-hom",
                      inputs={"morphism": self.name,
                              "source": self.source.name,
                              "target": self.target.name},
                      items=items)


def identity_morphism(pres: Presentation) -> Morphism:
    return Morphism(pres, pres,
                    {g.name: pres.gen_element(g.name) for g in pres.generators},
                    name=f"id[{pres.name}]")
