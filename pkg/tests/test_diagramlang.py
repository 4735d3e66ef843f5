import random
import warnings
from pathlib import Path

import pytest

from catsl2.exactpoly import Polynomial, ygen
from catsl2.grassrings import GrassContext, bubble_value
from catsl2.bimodules import BimElement, FlagPath
from catsl2.twomorphisms import (
    SignedWord,
    audit_degree,
    compile_word,
    compose_vertical,
    identity_map,
    map_equals,
    right_mult,
    zero_map,
)
from catsl2.diagramlang import (
    DiagramAST,
    DiagramError,
    LayerToken,
    ZeroDiagramWarning,
    compile_diagram,
    parse_diagram,
    parse_element,
    render_diagram,
    _layer_map,
)

DIAGRAM_DIR = Path(__file__).resolve().parent.parent / "docs" / "diagrams"


# -- parsing --------------------------------------------------------------------


def test_parse_bubble_diagram():
    ast = parse_diagram("N = 1\nweight = -1\ndomain = 1\n"
                        "layer: cup_fe\nlayer: cap_fe\n")
    assert ast.N == 1 and ast.weight == -1
    assert ast.domain == SignedWord((), -1)
    assert [[t.kind for t in layer] for layer in ast.layers] == \
        [["cup_fe"], ["cap_fe"]]


def test_parse_single_crossing():
    ast = parse_diagram("N = 2\nweight = -2\ndomain = E E\nlayer: cross_ee\n")
    assert ast.domain.letters == ("E", "E")
    assert ast.words[-1] == ("E", "E")


def test_parse_comments_and_blanks():
    ast = parse_diagram("# a bubble\nN = 1\n\nweight = -1\n"
                        "domain = 1   # identity domain\nlayer: cup_fe\n"
                        "layer: cap_fe\n")
    assert len(ast.layers) == 2


def test_arity_error_reports_span():
    with pytest.raises(DiagramError) as err:
        parse_diagram("N = 1\nweight = -1\ndomain = E\nlayer: cap_fe\n")
    assert "cap_fe consumes 2 strands, found 1" in str(err.value)
    assert "line 4" in str(err.value)


def test_orientation_error():
    with pytest.raises(DiagramError) as err:
        parse_diagram("N = 2\nweight = 0\ndomain = E F\nlayer: cross_ee\n")
    assert "needs strands E E, found E F" in str(err.value)


def test_unknown_token_error():
    with pytest.raises(DiagramError) as err:
        parse_diagram("N = 1\nweight = -1\ndomain = 1\nlayer: cupfe\n")
    assert "unknown token" in str(err.value)


def test_header_errors():
    with pytest.raises(DiagramError):
        parse_diagram("N = 1\nweight = -1\nlayer: cup_fe\n")
    with pytest.raises(DiagramError):
        parse_diagram("N = x\nweight = -1\ndomain = 1\n")
    with pytest.raises(DiagramError):
        parse_diagram("N = 1\nN = 2\nweight = -1\ndomain = 1\n")
    with pytest.raises(DiagramError):
        parse_diagram("N = 1\nweight = 0\ndomain = 1\n")   # parity


# -- random round trip ---------------------------------------------------------------


def _random_ast(rng):
    N = rng.randrange(1, 4)
    k0 = rng.randrange(0, N + 1)
    weight = 2 * k0 - N
    letters = tuple(rng.choice("EF") for _ in range(rng.randrange(0, 4)))
    word = list(letters)
    layers = []
    for _ in range(rng.randrange(1, 5)):
        layer = []
        produced = []
        pos = 0
        while True:
            if len(word) + 2 <= 6 and rng.random() < 0.15:
                kind = rng.choice(("cup_fe", "cup_ef"))
                layer.append(LayerToken(kind))
                produced.extend(("F", "E") if kind == "cup_fe" else ("E", "F"))
                continue
            if pos >= len(word):
                break
            here = word[pos]
            options = ["id", "dot"]
            if pos + 1 < len(word):
                pair = (word[pos], word[pos + 1])
                if pair in (("E", "E"), ("F", "F")):
                    options.append("cross")
                if pair in (("F", "E"), ("E", "F")):
                    options.append("cap")
            pick = rng.choice(options)
            if pick == "id":
                layer.append(LayerToken("id_" + here.lower()))
                produced.append(here)
                pos += 1
            elif pick == "dot":
                layer.append(LayerToken("dot_" + here.lower()))
                produced.append(here)
                pos += 1
            elif pick == "cross":
                layer.append(LayerToken("cross_" + (here * 2).lower()))
                produced.extend(word[pos:pos + 2])
                pos += 2
            else:
                layer.append(LayerToken("cap_" + word[pos].lower()
                                        + word[pos + 1].lower()))
                pos += 2
        layers.append(tuple(layer))
        word = produced
    return DiagramAST(N, weight, SignedWord(letters, weight), layers)


def test_parse_render_round_trip():
    rng = random.Random(2718)
    for _ in range(100):
        ast = _random_ast(rng)
        assert parse_diagram(render_diagram(ast)) == ast


# -- compilation ------------------------------------------------------------------------


def test_compile_dot_only():
    ast = parse_diagram("N = 2\nweight = 0\ndomain = E\nlayer: dot_e\n")
    diagram = compile_diagram(ast)
    assert diagram.degree == 2
    assert diagram.apply_vec((0,)).terms == {(1,): Polynomial.one()}


def test_compile_worked_zigzag():
    ast = parse_diagram((DIAGRAM_DIR / "zigzag.cat").read_text())
    diagram = compile_diagram(ast)
    ok, report = map_equals(diagram, identity_map(diagram.domain))
    assert ok, report


def test_compile_worked_bubble():
    ast = parse_diagram((DIAGRAM_DIR / "bubble.cat").read_text())
    diagram = compile_diagram(ast)
    want = bubble_value(GrassContext(1, 0), "ccw", 0)
    ok, report = map_equals(diagram, right_mult(diagram.domain, want))
    assert ok, report


def test_compile_worked_crossing_square():
    ast = parse_diagram((DIAGRAM_DIR / "crossing_square.cat").read_text())
    diagram = compile_diagram(ast)
    ok, report = map_equals(diagram, zero_map(diagram.domain,
                                              diagram.codomain, -4))
    assert ok, report


def test_compile_dotted_bubble_matches_formula():
    # a cw bubble at weight -1 with d interior dots is multiplication by
    # the closed bubble value at alpha = d - (n - 1)
    for dots in range(0, 4):
        lines = ["N = 1", "weight = -1", "domain = 1", "layer: cup_ef"]
        lines += ["layer: id_e dot_f"] * dots
        lines.append("layer: cap_ef")
        diagram = compile_diagram(parse_diagram("\n".join(lines) + "\n"))
        alpha = dots - (-1 - 1)
        want = bubble_value(GrassContext(1, 0), "cw", alpha)
        ok, report = map_equals(diagram, right_mult(diagram.domain, want))
        assert ok, (dots, report)


@pytest.mark.filterwarnings("ignore::catsl2.diagramlang.ZeroDiagramWarning")
def test_compile_layer_associativity():
    rng = random.Random(46)
    count = 0
    while count < 25:
        ast = _random_ast(rng)
        if len(ast.layers) < 2:
            continue
        count += 1
        full = compile_diagram(ast)
        head = compile_diagram(DiagramAST(ast.N, ast.weight, ast.domain,
                                          ast.layers[:-1]))
        stepwise = compose_vertical(_layer_map(head.codomain, ast.layers[-1]),
                                    head)
        ok, report = map_equals(full, stepwise)
        assert ok, report


@pytest.mark.filterwarnings("ignore::catsl2.diagramlang.ZeroDiagramWarning")
def test_compiled_degree_matches_table_sum():
    rng = random.Random(99)
    for _ in range(40):
        ast = _random_ast(rng)
        diagram = compile_diagram(ast)
        assert diagram.degree == _table_degree_sum(ast)
        ok, report = audit_degree(diagram)
        assert ok, report


def _table_degree_sum(ast):
    """Independent degree bookkeeping from the generator table."""
    path = compile_word(ast.domain, ast.N)
    total = 0
    current = path
    for layer in ast.layers:
        produced = 0
        for token in layer:
            m = current.num_factors
            r = m - produced
            kind = token.kind
            if kind.startswith("id"):
                produced += 1
            elif kind.startswith("dot"):
                total += 2
                produced += 1
            elif kind.startswith("cross"):
                total -= 2
                produced += 2
            elif kind.startswith("cup"):
                n = 2 * current.rings[r] - ast.N
                total += n + 1 if kind == "cup_fe" else 1 - n
                mid = current.rings[r] + (1 if kind == "cup_fe" else -1)
                current = current.insert_excursion(r, mid, 1 - ast.N)
                produced += 2
            else:
                n = 2 * current.rings[r - 2] - ast.N
                total += n + 1 if kind == "cap_fe" else 1 - n
                current = current.remove_excursion(r - 1, -(1 - ast.N))
    return total


def test_zero_domain_warns():
    text = "N = 1\nweight = -1\ndomain = F\nlayer: dot_f\n"
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        diagram = compile_diagram(parse_diagram(text))
    assert any(issubclass(w.category, ZeroDiagramWarning) for w in caught)
    assert diagram.domain.is_zero


# -- elements ------------------------------------------------------------------------------


def test_parse_element_basis():
    path = FlagPath(3, (1, 2, 1))
    element = parse_element("1 | 1", path)
    assert element.terms == {(0, 0): Polynomial.one()}


def test_parse_element_normalizes():
    path = FlagPath(1, (0, 1, 0))
    element = parse_element("xi | 1", path)
    assert element.terms == {(0, 0): ygen(1, -1)}


def test_parse_element_sums_and_rationals():
    from fractions import Fraction
    from catsl2.bimodules import RawTensor, normalize
    path = FlagPath(3, (1, 2))
    element = parse_element("1/2 * xi^2 - x[1] * xi", path)
    ring = path.step_ring(1)
    direct = normalize(RawTensor(path, (ring.xi(2) * Fraction(1, 2)
                                        - ring.x(1) * ring.xi(),)))
    assert element == direct


def test_parse_element_identity_path():
    path = FlagPath(4, (2,))
    element = parse_element("x[1]^2 + 3 * y[2]", path)
    ctx = GrassContext(4, 2)
    assert element == BimElement.from_ring_poly(
        path, ctx.x(1) ** 2 + 3 * ctx.y(2))


def test_parse_element_errors():
    with pytest.raises(DiagramError) as err:
        parse_element("x[3]", FlagPath(4, (2,)))
    assert "unknown generator x[3]" in str(err.value)
    with pytest.raises(DiagramError):
        parse_element("x[2]", FlagPath(3, (1, 2)))     # k=1 factor has only x[1]
    with pytest.raises(DiagramError):
        parse_element("1 | 1", FlagPath(3, (1, 2)))    # factor-count mismatch
    with pytest.raises(DiagramError):
        parse_element("1 +", FlagPath(3, (1,)))
    with pytest.raises(DiagramError):
        parse_element("xi", FlagPath(3, (1,)))         # no xi on identity paths
