import random

import pytest

from spanpaths.idsys import (
    DescentFamily,
    Section,
    build_family,
    check_computation,
    elim_section,
    encode_decode,
    parity_family,
    random_family,
    trivial_family,
    uniqueness_check,
    winding_family,
    word_family,
)
from spanpaths.words import FWD, all_reduced_words, parse_word

T_EDGE = 1  # the circle's second edge, the counted one in the worked examples


def test_trivial_family_has_unique_section(circle):
    fam = trivial_family(circle, 4)
    section = elim_section(fam, 0)
    assert set(section.values.values()) == {0}
    assert check_computation(fam, 0, section).ok
    assert uniqueness_check(fam, 0, section).ok


def test_winding_family_counts_signed_crossings(circle):
    fam = winding_family(circle, 6, T_EDGE)
    section = elim_section(fam, 0)
    assert section.values[parse_word(circle, ">s <t")] == -1
    assert section.values[parse_word(circle, ">t <s")] == 1
    assert section.values[parse_word(circle, ">t <s >t <s")] == 2
    assert check_computation(fam, 0, section).ok
    assert uniqueness_check(fam, 0, section).ok


def test_parity_family_counts_crossings_mod_two(circle):
    fam = parity_family(circle, 6, T_EDGE)
    section = elim_section(fam, 0)
    for word, value in section.values.items():
        t_crossings = sum(1 for step in word if step.edge == T_EDGE)
        assert value == t_crossings % 2
    assert check_computation(fam, 0, section).ok


def test_fold_visits_each_word_exactly_once(theta):
    fam = trivial_family(theta, 4)
    section = elim_section(fam, 0)
    words = all_reduced_words(theta, 4)
    assert set(section.values) == set(words)
    assert len(section.values) == len(words)
    for word in words:
        if word:
            assert word[:-1] in section.values  # unique reduced predecessor


def test_elim_rejects_bad_base_value(circle):
    fam = trivial_family(circle, 3)
    with pytest.raises(ValueError, match="not in the fiber"):
        elim_section(fam, 99)


def test_elim_reports_window_too_small(circle):
    # folding the winding family from the window's edge walks out of it
    fam = winding_family(circle, 4, T_EDGE)
    with pytest.raises(ValueError, match="window too small"):
        elim_section(fam, 4)


def test_check_computation_flags_corruption(circle):
    fam = parity_family(circle, 6, T_EDGE)
    section = elim_section(fam, 0)
    corrupted = dict(section.values)
    target = parse_word(circle, ">t")
    corrupted[target] ^= 1
    report = check_computation(fam, 0, Section(fam, corrupted))
    assert not report.ok
    assert any(">t" in violation for violation in report.violations)


def test_check_computation_covers_cancellation_case(circle):
    # value tables where the backward case was folded wrongly must be caught
    fam = winding_family(circle, 4, T_EDGE)
    section = elim_section(fam, 0)
    corrupted = dict(section.values)
    target = parse_word(circle, ">s <t")  # reached through the inverse transition
    corrupted[target] = corrupted[target] + 1
    report = check_computation(fam, 0, Section(fam, corrupted))
    assert not report.ok


def test_uniqueness_against_independent_scan(circle):
    # rebuild the winding section by direct inspection of each word
    fam = winding_family(circle, 6, T_EDGE)
    values = {}
    for word in all_reduced_words(circle, 6):
        signed = 0
        for step in word:
            if step.edge == T_EDGE:
                signed += 1 if step.direction == FWD else -1
        values[word] = signed
    section = Section(fam, values)
    assert check_computation(fam, 0, section).ok
    assert uniqueness_check(fam, 0, section).ok


def test_uniqueness_reports_first_disagreement(circle):
    fam = parity_family(circle, 5, T_EDGE)
    section = elim_section(fam, 0)
    corrupted = dict(section.values)
    target = parse_word(circle, ">s <t >s")
    corrupted[target] ^= 1
    report = uniqueness_check(fam, 0, Section(fam, corrupted))
    assert not report.ok
    assert ">s <t >s" in report.first_disagreement


def test_encode_decode_interval(interval):
    report = encode_decode(interval, 4)
    assert report.ok
    assert report.identity_checked == 2  # refl and the single crossing


def test_encode_decode_circle(circle):
    report = encode_decode(circle, 6)
    assert report.ok
    assert report.identity_checked == len(all_reduced_words(circle, 5))


def test_encode_decode_theta(theta):
    report = encode_decode(theta, 4)
    assert report.ok
    assert report.identity_checked == len(all_reduced_words(theta, 3))


def test_word_family_transitions_are_concatenation(circle):
    fam = word_family(circle, 4)
    for (s, w), (fwd, inv) in fam.transitions.items():
        for value, image in fwd.items():
            assert inv[image] == value
            assert len(image) in (len(value) - 1, len(value) + 1)


def test_family_validation_rejects_missing_fiber(circle):
    fam = trivial_family(circle, 3)
    fibers = dict(fam.fibers)
    fibers.pop(parse_word(circle, ">s"))
    with pytest.raises(ValueError, match="fiber table"):
        DescentFamily(circle, 3, fibers, fam.transitions)


def test_family_validation_rejects_non_bijection(circle):
    fam = parity_family(circle, 3, T_EDGE)
    transitions = dict(fam.transitions)
    key = (0, ())
    transitions[key] = ({0: 0, 1: 0}, {0: 0})
    with pytest.raises(ValueError, match="not bijective"):
        DescentFamily(circle, 3, fam.fibers, transitions)


def test_family_validation_rejects_escaping_values(circle):
    fam = parity_family(circle, 3, T_EDGE)
    transitions = dict(fam.transitions)
    transitions[(0, ())] = ({0: 5, 1: 1}, {5: 0, 1: 1})
    with pytest.raises(ValueError, match="leaves the fibers"):
        DescentFamily(circle, 3, fam.fibers, transitions)


def test_random_families_fold_coherently(corpus):
    rng = random.Random(7)
    for span in corpus.values():
        for _ in range(3):
            fam = random_family(span, 5, rng)
            section = elim_section(fam, 0)
            assert check_computation(fam, 0, section).ok
            assert uniqueness_check(fam, 0, section).ok


def test_build_family_on_edgeless_span(coproduct):
    fam = build_family(coproduct, 6, lambda v: (0, 1), lambda s, w, x: x)
    assert set(fam.fibers) == {()}
    assert fam.transitions == {}
    section = elim_section(fam, 1)
    assert section.values == {(): 1}
