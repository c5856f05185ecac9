"""Normal ordering of words in a finite set of generators closed under commutators.

Coefficients live in QQ[m, k].  A relation table stores [a, b] = ab - ba for every
ordered pair as a combination of normal-form words of length <= 1 (a Lie algebra plus
constants), so rewriting ab -> ba + [a, b] on the first descent terminates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

R, M, K = ring("m,k", QQ)

Word = Tuple[int, ...]


def ring_elem(c) -> "R.dtype":
    if isinstance(c, str):
        return R(QQ(*map(int, c.split("/"))) if "/" in c else QQ(int(c)))
    return R(c)


class Expr:
    """Finite sum of words with QQ[m, k] coefficients, tied to an Algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "Algebra", terms: Optional[Mapping[Word, object]] = None):
        self.alg = alg
        self.terms: Dict[Word, object] = {}
        for w, c in (terms or {}).items():
            c = ring_elem(c)
            if c:
                self.terms[tuple(w)] = c

    def _wrap(self, other) -> "Expr":
        if isinstance(other, Expr):
            if other.alg is not self.alg:
                raise ValueError("expressions from different algebras")
            return other
        return Expr(self.alg, {(): other})

    def __add__(self, other) -> "Expr":
        other = self._wrap(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, R.zero) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Expr(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "Expr":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "Expr":
        return self._wrap(other) - self

    def __mul__(self, other) -> "Expr":
        if not isinstance(other, Expr):
            c = ring_elem(other)
            return Expr(self.alg, {w: v * c for w, v in self.terms.items()})
        other = self._wrap(other)
        out: Dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, R.zero) + c1 * c2
        return Expr(self.alg, out)

    def __rmul__(self, other) -> "Expr":
        c = ring_elem(other)
        return Expr(self.alg, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int) -> "Expr":
        out = Expr(self.alg, {(): 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Expr):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.alg.names
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            word = "*".join(names[g] for g in w) or "1"
            parts.append(f"({self.terms[w].as_expr()})*{word}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Expr({self.to_text()})"


def commutator(a: Expr, b: Expr) -> Expr:
    return a * b - b * a


@dataclass
class Algebra:
    """Generators in canonical order (index = position) plus the commutator table."""
    names: Tuple[str, ...]
    table: Dict[Tuple[int, int], Dict[Word, object]] = field(repr=False)
    lowering: Dict[int, int] = field(default_factory=dict, repr=False)  # u-degree shift per generator
    value_euler: Optional[str] = None      # generator acting as the value degree k
    value_killers: Tuple[str, ...] = ()    # generators annihilating the value space

    def __post_init__(self):
        self.index = {n: i for i, n in enumerate(self.names)}
        self._nf = lru_cache(maxsize=None)(self._word_nf)

    def __hash__(self):
        return id(self)

    def gen(self, name: str) -> Expr:
        return Expr(self, {(self.index[name],): 1})

    def one(self) -> Expr:
        return Expr(self, {(): 1})

    def scalar(self, c) -> Expr:
        return Expr(self, {(): c})

    def bracket(self, a: int, b: int) -> Expr:
        return Expr(self, self.table.get((a, b), {}))

    # -- normal ordering

    def _word_nf(self, w: Word) -> Dict[Word, object]:
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a > b:
                out: Dict[Word, object] = {}

                def add(src: Dict[Word, object], c=R.one):
                    for ww, cc in src.items():
                        v = out.get(ww, R.zero) + c * cc
                        if v:
                            out[ww] = v
                        else:
                            out.pop(ww, None)

                add(self._nf(w[:i] + (b, a) + w[i + 2:]))
                for g, c in self.table.get((a, b), {}).items():
                    add(self._nf(w[:i] + g + w[i + 2:]), c)
                return out
        return {w: R.one}

    def normal_order(self, e: Expr) -> Expr:
        out: Dict[Word, object] = {}
        for w, c in e.terms.items():
            for ww, cc in self._nf(w).items():
                v = out.get(ww, R.zero) + c * cc
                if v:
                    out[ww] = v
                else:
                    out.pop(ww, None)
        return Expr(self, out)

    def is_normal(self, w: Word) -> bool:
        return all(w[i] <= w[i + 1] for i in range(len(w) - 1))

    # -- Lie structure

    def lie_bracket(self, x: Expr, y: Expr) -> Expr:
        """Bracket of two linear combinations of generators and constants, through the table only."""
        out = Expr(self)
        for wa, ca in x.terms.items():
            for wb, cb in y.terms.items():
                if not wa or not wb:
                    continue
                if len(wa) != 1 or len(wb) != 1:
                    raise ValueError("lie_bracket expects words of length <= 1")
                out = out + self.bracket(wa[0], wb[0]) * (ca * cb)
        return out

    def jacobi_failures(self) -> List[Tuple[str, str, str]]:
        bad = []
        n = len(self.names)
        for a, b, c in combinations(range(n), 3):
            ga, gb, gc = (Expr(self, {(g,): 1}) for g in (a, b, c))
            s = (self.lie_bracket(ga, self.lie_bracket(gb, gc))
                 + self.lie_bracket(gb, self.lie_bracket(gc, ga))
                 + self.lie_bracket(gc, self.lie_bracket(ga, gb)))
            if s:
                bad.append((self.names[a], self.names[b], self.names[c]))
        return bad

    def antisymmetry_failures(self) -> List[Tuple[str, str]]:
        bad = []
        n = len(self.names)
        for a in range(n):
            for b in range(n):
                if self.bracket(a, b) + self.bracket(b, a):
                    bad.append((self.names[a], self.names[b]))
        return bad

    # -- action on H_k-valued functions

    def module_reduce(self, e: Expr, k: Optional[int] = None) -> Expr:
        """Normal order, then use that the rightmost factor acts on an H_k-valued function.

        Trailing value killers give 0 and a trailing value Euler operator gives k.  For a
        concrete integer k the coefficients are evaluated at k and any word whose running
        u-degree (read right to left from k) turns negative is dropped.
        """
        e = self.normal_order(e)
        kill = {self.index[n] for n in self.value_killers}
        eu = self.index.get(self.value_euler) if self.value_euler else None
        kval = K if k is None else R(k)
        out: Dict[Word, object] = {}
        for w, c in e.terms.items():
            w = list(w)
            c = c if k is None else c.subs(K, k)
            dead = False
            while w:
                if w[-1] in kill:
                    dead = True
                    break
                if w[-1] == eu:
                    c = c * kval
                    w.pop()
                    continue
                break
            if dead or not c:
                continue
            if k is not None and self.lowering:
                deg = k
                for g in reversed(w):
                    deg += self.lowering.get(g, 0)
                    if deg < 0:
                        dead = True
                        break
                if dead:
                    continue
            tw = tuple(w)
            v = out.get(tw, R.zero) + c
            if v:
                out[tw] = v
            else:
                out.pop(tw, None)
        return Expr(self, out)


# ----------------------------------------------------------------------------- frozen tables

def _encode_coeff(c) -> Dict[str, str]:
    return {f"{i},{j}": str(v) for (i, j), v in sorted(c.to_dict().items())}


def _decode_coeff(d: Mapping[str, str]):
    return R.from_dict({tuple(int(t) for t in key.split(",")): QQ(*map(int, v.split("/")))
                        if "/" in v else QQ(int(v)) for key, v in d.items()})


def table_to_json(names: Sequence[str], table: Dict[Tuple[int, int], Dict[Word, object]],
                  meta: Optional[dict] = None) -> str:
    rels = []
    for (a, b), comb in sorted(table.items()):
        rels.append({
            "left": names[a], "right": names[b],
            "terms": [{"word": [names[g] for g in w], "coeff": _encode_coeff(c)}
                      for w, c in sorted(comb.items())],
        })
    return json.dumps({"generators": list(names), "meta": meta or {}, "relations": rels},
                      indent=1, sort_keys=True) + "\n"


def table_from_json(text: str) -> Tuple[Tuple[str, ...], Dict[Tuple[int, int], Dict[Word, object]], dict]:
    data = json.loads(text)
    names = tuple(data["generators"])
    idx = {n: i for i, n in enumerate(names)}
    table = {}
    for rel in data["relations"]:
        comb = {tuple(idx[g] for g in t["word"]): _decode_coeff(t["coeff"]) for t in rel["terms"]}
        table[(idx[rel["left"]], idx[rel["right"]])] = comb
    return names, table, data.get("meta", {})


def load_frozen(filename: str) -> Tuple[Tuple[str, ...], Dict[Tuple[int, int], Dict[Word, object]], dict]:
    text = resources.files(__package__).joinpath(filename).read_text()
    return table_from_json(text)
