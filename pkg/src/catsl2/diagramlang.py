"""Textual DSL for string diagrams and bimodule elements.

Diagram files are line oriented: a header fixing the rank, the domain
weight and the domain word, then one ``layer:`` line per horizontal slice,
bottom slice first.  ``#`` starts a comment.  Example::

    N = 1
    weight = -1
    domain = 1
    layer: cup_fe
    layer: cap_fe

Layer tokens name the generators with their strand orientations spelled
out (``cup_fe``, ``cross_ee``, ``dot_f``, ...).  A layer's tokens are read
left to right across the displayed strands of the current word; caps
consume two adjacent strands, cups consume none and insert two.  Displayed
strand order is the reverse of tensor-factor order (diagrams are read
right to left, tensor factors act from the domain outward), and the
compiler performs that flip when it addresses factors of the flag path.

Element expressions are sums of tensor terms ``f1 | f2 | ... | fm``, one
factor expression per path factor in factor order.  A factor expression
is a product of ``x[j]``, ``y[j]``, ``xi`` tokens with optional ``^e``
powers and an optional rational coefficient ``p/q``; weight tags are
inferred from the factor's position in the path.  ``+`` and ``-`` join
tensor terms at top level only.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly import Polynomial, x_sym, xi_sym, y_sym
from .bimodules import BimElement, FlagPath, RawTensor, normalize
from .twomorphisms import (
    BimMap,
    SignedWord,
    compile_word,
    compose_vertical,
    gen_cap,
    gen_crossing,
    gen_cup,
    gen_dot,
    identity_map,
)


class DiagramError(ValueError):
    """Parse or type error, carrying a 1-based source span."""

    def __init__(self, message: str, line: int | None = None,
                 col_start: int | None = None, col_end: int | None = None):
        self.line = line
        self.col_start = col_start
        self.col_end = col_end
        if line is not None:
            where = "line %d" % line
            if col_start is not None:
                where += ", cols %d-%d" % (col_start, col_end)
            message = "%s: %s" % (where, message)
        super().__init__(message)


class ZeroDiagramWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SourceSpan:
    line: int
    col_start: int
    col_end: int


# token -> (consumed strand orientations, produced strand orientations),
# in display order
TOKEN_SHAPES = {
    "id_e": (("E",), ("E",)),
    "id_f": (("F",), ("F",)),
    "dot_e": (("E",), ("E",)),
    "dot_f": (("F",), ("F",)),
    "cross_ee": (("E", "E"), ("E", "E")),
    "cross_ff": (("F", "F"), ("F", "F")),
    "cup_fe": ((), ("F", "E")),
    "cup_ef": ((), ("E", "F")),
    "cap_fe": (("F", "E"), ()),
    "cap_ef": (("E", "F"), ()),
}


@dataclass(frozen=True)
class LayerToken:
    kind: str
    span: SourceSpan | None = field(default=None, compare=False)


class DiagramAST:
    """A type-checked diagram: header data plus layers of tokens.

    Equality ignores source spans, so rendering and reparsinground-trips.
    """

    def __init__(self, N: int, weight: int, domain: SignedWord, layers):
        self.N = N
        self.weight = weight
        self.domain = domain
        self.layers = tuple(tuple(tok) for tok in layers)
        self.words = _typecheck(self)

    def __eq__(self, other):
        if not isinstance(other, DiagramAST):
            return NotImplemented
        return (self.N, self.weight, self.domain, self.layers) == \
               (other.N, other.weight, other.domain, other.layers)

    def __repr__(self):
        return "DiagramAST(N=%d, weight=%d, domain=%s, %d layers)" % (
            self.N, self.weight, self.domain.render(), len(self.layers))


def _typecheck(ast: DiagramAST):
    """Check arity and orientation of every layer; return the word list."""
    if (ast.weight + ast.N) % 2 != 0:
        raise DiagramError("weight %d and rank N=%d have different parity"
                           % (ast.weight, ast.N))
    word = tuple(ast.domain.letters)
    words = [word]
    for layer in ast.layers:
        produced = []
        pos = 0
        for tok in layer:
            consumed, out = TOKEN_SHAPES[tok.kind]
            take = word[pos:pos + len(consumed)]
            if len(take) < len(consumed):
                raise DiagramError(
                    "%s consumes %d strands, found %d"
                    % (tok.kind, len(consumed), len(take)),
                    *(tok.span and (tok.span.line, tok.span.col_start,
                                    tok.span.col_end) or (None,)))
            if take != consumed:
                raise DiagramError(
                    "%s needs strands %s, found %s"
                    % (tok.kind, " ".join(consumed), " ".join(take)),
                    *(tok.span and (tok.span.line, tok.span.col_start,
                                    tok.span.col_end) or (None,)))
            pos += len(consumed)
            produced.extend(out)
        if pos != len(word):
            raise DiagramError("layer consumes %d strands, word has %d"
                               % (pos, len(word)))
        word = tuple(produced)
        words.append(word)
    return words


# ---------------------------------------------------------------------------
# diagram parsing and rendering
# ---------------------------------------------------------------------------


_HEADER_RE = re.compile(r"^\s*(N|weight|domain)\s*=\s*(.+?)\s*$")
_LAYER_RE = re.compile(r"^\s*layer\s*:\s*(.*?)\s*$")
_WORD_TOKEN_RE = re.compile(r"^(?:[EF](?:\s+[EF])*|1)$")


def parse_diagram(text: str) -> DiagramAST:
    header: dict = {}
    layers = []
    seen_layer = False
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LAYER_RE.match(line)
        if m:
            seen_layer = True
            toks = []
            for match in re.finditer(r"\S+", m.group(1)):
                word = match.group(0)
                span = SourceSpan(lineno, match.start() + 1, match.end())
                if word not in TOKEN_SHAPES:
                    raise DiagramError("unknown token %r" % word, lineno,
                                       match.start() + 1, match.end())
                toks.append(LayerToken(word, span))
            layers.append(tuple(toks))
            continue
        m = _HEADER_RE.match(line)
        if m:
            key, value = m.group(1), m.group(2)
            if seen_layer:
                raise DiagramError("header %r after the first layer" % key, lineno)
            if key in header:
                raise DiagramError("duplicate header %r" % key, lineno)
            if key in ("N", "weight"):
                try:
                    header[key] = int(value)
                except ValueError:
                    raise DiagramError("%s must be an integer, got %r"
                                       % (key, value), lineno) from None
            else:
                if not _WORD_TOKEN_RE.match(value):
                    raise DiagramError("domain must be E/F letters or 1, got %r"
                                       % value, lineno)
                header["domain"] = value
            continue
        raise DiagramError("cannot parse line %r" % line.strip(), lineno)
    for key in ("N", "weight", "domain"):
        if key not in header:
            raise DiagramError("missing header %r" % key)
    domain = SignedWord.parse(header["domain"], header["weight"])
    return DiagramAST(header["N"], header["weight"], domain, layers)


def render_diagram(ast: DiagramAST) -> str:
    lines = ["N = %d" % ast.N,
             "weight = %d" % ast.weight,
             "domain = %s" % ast.domain.render()]
    for layer in ast.layers:
        lines.append("layer: %s" % " ".join(tok.kind for tok in layer))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# compilation
# ---------------------------------------------------------------------------


def _layer_map(path: FlagPath, layer) -> BimMap:
    """Compile one layer on the current path, token by token.

    Tokens address displayed strands left to right; with m factors on the
    current path, the strand after ``produced`` fixed output strands is
    factor ``m - produced`` and the insertion gap there is junction
    ``m - produced``.
    """
    acc = identity_map(path)
    produced = 0
    for tok in layer:
        cur = acc.codomain
        r = cur.num_factors - produced
        kind = tok.kind
        if kind in ("id_e", "id_f"):
            produced += 1
            continue
        if kind in ("dot_e", "dot_f"):
            gen = gen_dot(cur, r)
            produced += 1
        elif kind in ("cross_ee", "cross_ff"):
            gen = gen_crossing(cur, r - 1, "up" if kind == "cross_ee" else "down")
            produced += 2
        elif kind in ("cup_fe", "cup_ef"):
            gen = gen_cup(cur, r, kind[4:])
            produced += 2
        elif kind in ("cap_fe", "cap_ef"):
            gen = gen_cap(cur, r - 1, kind[4:])
        else:
            raise DiagramError("unknown token %r" % kind)
        acc = compose_vertical(gen, acc)
    return acc


def compile_diagram(ast: DiagramAST) -> BimMap:
    """Compile to a bimodule map, composing whiskered generators bottom-up."""
    path = compile_word(ast.domain, ast.N)
    if path.is_zero:
        warnings.warn("diagram domain is the zero bimodule; the compiled "
                      "map is zero", ZeroDiagramWarning, stacklevel=2)
    acc = identity_map(path)
    for layer in ast.layers:
        acc = compose_vertical(_layer_map(acc.codomain, layer), acc)
    return acc


# ---------------------------------------------------------------------------
# element expressions
# ---------------------------------------------------------------------------


_ELEMENT_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<gen>[xy])\[(?P<idx>\d+)\]"
    r"|(?P<xi>xi))"
    r"(?:\s*\^\s*(?P<exp>\d+))?\s*$")


def _parse_factor(expr: str, offset: int, symbol_of) -> Polynomial:
    """One factor expression: a product of powered tokens and rationals."""
    poly = Polynomial.one()
    col = offset
    for piece in expr.split("*"):
        start = col
        col += len(piece) + 1
        stripped = piece.strip()
        if not stripped:
            raise DiagramError("empty token in factor expression", 1,
                               start + 1, start + max(1, len(piece)))
        m = _ELEMENT_TOKEN_RE.match(piece)
        if not m:
            raise DiagramError("cannot parse token %r" % stripped, 1,
                               start + 1, start + len(piece))
        exp = int(m.group("exp")) if m.group("exp") else 1
        if m.group("rat"):
            num, _, den = m.group("rat").partition("/")
            value = Fraction(int(num), int(den) if den else 1)
            poly = poly * Polynomial.const(value ** exp)
        else:
            kind = "xi" if m.group("xi") else m.group("gen")
            index = int(m.group("idx")) if m.group("idx") else 0
            sym = symbol_of(kind, index, 1, start + 1, start + len(piece))
            poly = poly * Polynomial.gen(sym, exp)
    return poly


def _factor_symbol_resolver(path: FlagPath, position: int):
    """Map x/y/xi tokens of the factor at `position` to canonical symbols."""
    ring = path.step_ring(position)

    def resolve(kind, index, line, col_start, col_end):
        if kind == "xi":
            return xi_sym(position)
        if kind == "x":
            if 1 <= index <= ring.j:
                return x_sym(index, ring.nu)
            raise DiagramError(
                "unknown generator x[%d] for factor %d (x-range 1..%d)"
                % (index, position, ring.j), line, col_start, col_end)
        if 1 <= index <= ring.N - ring.j - 1:
            return y_sym(index, ring.nu + 2)
        raise DiagramError(
            "unknown generator y[%d] for factor %d (y-range 1..%d)"
            % (index, position, ring.N - ring.j - 1), line, col_start, col_end)

    return resolve


def _identity_symbol_resolver(path: FlagPath):
    ctx_k = path.rings[0]
    n = 2 * ctx_k - path.N

    def resolve(kind, index, line, col_start, col_end):
        if kind == "xi":
            raise DiagramError("xi is not a generator of the identity bimodule",
                               line, col_start, col_end)
        if kind == "x":
            if 1 <= index <= ctx_k:
                return x_sym(index, n)
            raise DiagramError("unknown generator x[%d] for the identity "
                               "factor (k=%d)" % (index, ctx_k),
                               line, col_start, col_end)
        if 1 <= index <= path.N - ctx_k:
            return y_sym(index, n)
        raise DiagramError("unknown generator y[%d] for the identity "
                           "factor (k=%d)" % (index, ctx_k),
                           line, col_start, col_end)

    return resolve


def parse_element(text: str, path: FlagPath) -> BimElement:
    """Parse an element expression and return its normal form."""
    m = path.num_factors
    pieces = re.split(r"(?<![|*^/])\s*([+-])\s*", text)
    if pieces[0].strip() == "":
        pieces = pieces[1:]
    signs = ["+"]
    terms = []
    for piece in pieces:
        if piece in ("+", "-"):
            signs.append(piece)
        else:
            terms.append(piece)
    if len(signs) != len(terms):
        raise DiagramError("dangling sign in element expression", 1, 1, len(text))
    if path.is_zero:
        return BimElement.zero(path)
    total = BimElement.zero(path)
    offset = 0
    for sign, term in zip(signs, terms):
        offset = text.find(term, offset)
        factor_exprs = term.split("|")
        expected = max(m, 1)
        if len(factor_exprs) != expected:
            raise DiagramError(
                "tensor term has %d factor expressions, path %s needs %d"
                % (len(factor_exprs), path.render(), expected),
                1, offset + 1, offset + len(term))
        col = offset
        polys = []
        for position, expr in enumerate(factor_exprs, start=1):
            resolver = (_identity_symbol_resolver(path) if m == 0
                        else _factor_symbol_resolver(path, position))
            polys.append(_parse_factor(expr, col, resolver))
            col += len(expr) + 1
        if m == 0:
            value = BimElement.from_ring_poly(path, polys[0])
        else:
            value = normalize(RawTensor(path, tuple(polys)))
        total = total + (value if sign == "+" else -value)
    return total
