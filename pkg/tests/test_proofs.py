import copy
import json
from importlib import resources

import pytest

from mvmodal.formula import Mec, parse, to_text
from mvmodal.proofs import (
    CATALOG, Proof, ProofLine, SideConditionError, check_proof, instantiate,
    proof_from_dict, soundness_spotcheck,
)
from mvmodal.values import tv


def corpus_files():
    root = resources.files("mvmodal") / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_corpus(name):
    text = (resources.files("mvmodal") / "corpus" / name).read_text()
    return proof_from_dict(json.loads(text))


def test_catalog_shape():
    assert set(CATALOG) == {"ln", "mvs5", "mvkd45", "qfl2"}
    assert "a1" in CATALOG["ln"]
    assert "t" in CATALOG["mvs5"] and "t" not in CATALOG["mvkd45"]
    assert "mec-dia" in CATALOG["mvkd45"]
    # lemma families are carried but are not axioms
    assert CATALOG["mvs5"]["l49"].lemma
    assert CATALOG["mvkd45"]["mec-dia-ge"].lemma


def test_instantiate_t():
    f = instantiate(CATALOG["mvs5"]["t"], {"A": parse("q", 3)}, {}, 3, "mvs5")
    assert to_text(f) == "box q -> q"


def test_instantiate_requires_full_substitution():
    with pytest.raises(ValueError):
        instantiate(CATALOG["ln"]["a1"], {"A": parse("q", 3)}, {}, 3)


def test_boolean_side_condition():
    bc = CATALOG["ln"]["bool-coef"]
    with pytest.raises(SideConditionError):
        instantiate(bc, {"A": parse("q", 3)}, {}, 3, "ln")
    f = instantiate(bc, {"A": parse("[2/2]q", 3)}, {}, 3, "ln")
    assert to_text(f) == "[2/2]q <-> [2/2][2/2]q"
    # in modal systems the argument may hide a modality under the coefficient
    f2 = instantiate(CATALOG["mvs5"]["bool-coef"],
                     {"A": parse("[1/2]dia q", 3)}, {}, 3, "mvs5")
    assert "dia" in to_text(f2)


def test_coef_fn_parameter_arithmetic():
    f = instantiate(CATALOG["ln"]["coef-fn"],
                    {"A": parse("q", 3), "B": parse("r", 3)},
                    {"i": tv(1, 3), "j": tv(1, 3), "star": "sconj"}, 3)
    # t_&(1/2, 1/2) = 0
    assert to_text(f) == "[1/2]q /\\ [1/2]r -> [0/2](q & r)"


def test_div_constraints():
    div = CATALOG["ln"]["div"]
    with pytest.raises(ValueError):
        instantiate(div, {"A": parse("q", 3)}, {"m": 2}, 3)  # needs 1 < m < 2
    f = instantiate(div, {"A": parse("q", 6)}, {"m": 4}, 6)  # 3 does not divide 5
    assert "|+|" in to_text(f)
    with pytest.raises(ValueError):
        instantiate(div, {"A": parse("q", 6)}, {"m": 2}, 6)  # 1 divides 5


def test_mec_dia_positive_bound():
    md = CATALOG["mvkd45"]["mec-dia"]
    with pytest.raises(ValueError):
        instantiate(md, {"A": parse("q", 3)}, {"j": tv(0, 3), "atoms": ("q",)}, 3, "mvkd45")


def test_corpus_is_accepted():
    names = corpus_files()
    assert len(names) >= 10
    systems = set()
    rules = set()
    for name in names:
        p = load_corpus(name)
        systems.add(p.system)
        for line in p.lines:
            rules.update(k for k in line.just if k in ("mp", "nec", "coef1"))
        assert check_proof(p).ok, name
    assert systems == {"ln", "mvs5", "mvkd45"}
    assert rules == {"mp", "nec", "coef1"}


def test_premise_free_corpus_is_sound():
    for name in corpus_files():
        p = load_corpus(name)
        if p.premises:
            continue
        assert soundness_spotcheck(p).all_tautologies, name


def test_nec_disabled_under_premises():
    p = Proof("mvs5", 3, [parse("[2/2]box q", 3)], [
        ProofLine(parse("[2/2]box q", 3), {"premise": True}),
        ProofLine(parse("box [2/2]box q", 3), {"nec": 1}),
    ])
    result = check_proof(p)
    assert not result.ok
    assert result.line == 2
    assert "necessitation" in result.reason


def test_premises_must_be_b_formulas():
    p = Proof("mvs5", 3, [parse("q", 3)], [
        ProofLine(parse("q", 3), {"premise": True}),
    ])
    result = check_proof(p)
    assert not result.ok
    assert "B-formula" in result.reason


def test_ln_has_no_modal_rules():
    p = Proof("ln", 3, [], [
        ProofLine(parse("q -> (r -> q)", 3), {"axiom": "a1", "subst": {"A": "q", "B": "r"}}),
        ProofLine(parse("box(q -> (r -> q))", 3), {"nec": 1}),
    ])
    result = check_proof(p)
    assert not result.ok and result.line == 2


def test_mp_direction_insensitive():
    lines = [
        ProofLine(parse("q -> (r -> q)", 3), {"axiom": "a1", "subst": {"A": "q", "B": "r"}}),
        ProofLine(parse("(q -> (r -> q)) -> (s -> (q -> (r -> q)))", 3),
                  {"axiom": "a1", "subst": {"A": "q -> (r -> q)", "B": "s"}}),
        ProofLine(parse("s -> (q -> (r -> q))", 3), {"mp": [2, 1]}),
    ]
    assert check_proof(Proof("ln", 3, [], lines)).ok


def test_bad_axiom_instance_is_line_accurate():
    p = Proof("ln", 3, [], [
        ProofLine(parse("q -> (r -> r)", 3), {"axiom": "a1", "subst": {"A": "q", "B": "r"}}),
    ])
    result = check_proof(p)
    assert not result.ok and result.line == 1
    assert "instance" in result.reason


def test_lemma_ids_are_not_axioms():
    p = Proof("mvs5", 3, [], [
        ProofLine(parse("q -> q", 3), {"axiom": "l49", "subst": {"C": "q"}}),
    ])
    result = check_proof(p)
    assert not result.ok
    assert "no axiom schema" in result.reason


def test_spotcheck_rejects_premise_proofs():
    p = load_corpus("mvs5-premise.json")
    with pytest.raises(ValueError):
        soundness_spotcheck(p)


def test_forward_references_rejected():
    p = Proof("ln", 3, [], [
        ProofLine(parse("q -> (r -> q)", 3), {"mp": [1, 2]}),
    ])
    result = check_proof(p)
    assert not result.ok and result.line == 1
