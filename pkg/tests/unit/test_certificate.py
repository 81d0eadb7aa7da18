"""Tests for certificate documents, their verification and tamper resistance."""

import copy
import json
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies
from sympy import nextprime

from nonsmooth_cert.exceptions import CertificateFormatError
from nonsmooth_cert.fixed_points import check_matching, configuration_fixed_points
from nonsmooth_cert.models import FailureLabel, ManifoldInvariants, VerdictKind
from nonsmooth_cert.obstruction import (
    certificate_from_dict,
    certificate_to_dict,
    invariant_index_dim,
    load_certificate,
    save_certificate,
    smoothness_window,
    verify_certificate,
    verify_document,
)
from nonsmooth_cert.realizability import check_arithmetic
from nonsmooth_cert.search import (
    certify_lemma42,
    run_strategy,
    theorem_1_3_construct,
    theorem_1_4_construct,
)


@lru_cache(maxsize=None)
def valid_documents():
    """Certificates from every construction, including a flipped one."""
    certificates = [
        theorem_1_4_construct(0),
        theorem_1_4_construct(2),
        theorem_1_3_construct(2, 7),
        theorem_1_3_construct(5, 19),
        run_strategy(ManifoldInvariants(19, 3), 11, "thm14"),
        certify_lemma42(ManifoldInvariants(3, 19), 127),
    ]
    for cert in certificates:
        assert cert.found
    return tuple(json.dumps(certificate_to_dict(cert)) for cert in certificates)


class TestCertificateDocument:
    """Test the JSON document schema."""

    def test_fields(self, k3_document):
        """Field names and values for the K3 certificate."""
        assert k3_document["p"] == 11
        assert k3_document["manifold"] == {"b2_plus": 3, "b2_minus": 19, "spin": True}
        assert k3_document["config"] == {"m": 0, "m_prime": 16, "r": 0, "s": 12}
        assert k3_document["cp2_weights"] == []
        assert k3_document["cp2bar_weights"][:4] == [[-1, 1, 2], [-1, 2, 3], [-1, 3, 4], [-2, 2, 4]]
        assert k3_document["s4_weights"] == []
        assert len(k3_document["matching"]) == 12
        assert k3_document["index"] == {"dim": 6, "sum_alpha": 0, "sum_alpha_prime": 16}
        assert k3_document["verdict"] == "ViolatesUpper"
        assert k3_document["orientation_flipped"] is False

    def test_round_trip_preserves_document(self, k3_document):
        """Rebuilding and serializing again gives the same document."""
        rebuilt = certificate_from_dict(k3_document)

        assert certificate_to_dict(rebuilt) == k3_document
        assert verify_certificate(rebuilt).accepted

    def test_save_and_load(self, k3_certificate, tmp_path):
        """Files the tool writes, it reads back and verifies."""
        path = tmp_path / "certs" / "k3.json"
        save_certificate(k3_certificate, path)
        loaded = load_certificate(path)

        assert verify_certificate(loaded).accepted
        assert path.read_text().endswith("}\n")

    def test_load_invalid_json(self, tmp_path):
        """Unreadable documents are format errors."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")

        with pytest.raises(CertificateFormatError):
            load_certificate(path)

    def test_flipped_certificate(self):
        """sigma > 0 inputs are recorded with the flip."""
        doc = certificate_to_dict(run_strategy(ManifoldInvariants(19, 3), 11, "thm14"))

        assert doc["manifold"]["b2_plus"] == 19
        assert doc["orientation_flipped"] is True
        assert verify_document(doc).accepted


class TestVerifyDocument:
    """Test verification of raw documents."""

    def test_accepts_valid(self, k3_document):
        assert verify_document(k3_document).accepted

    @pytest.mark.parametrize("field", ["p", "manifold", "config", "matching", "index", "verdict"])
    def test_missing_field(self, k3_document, field):
        """Structural damage raises."""
        del k3_document[field]

        with pytest.raises(CertificateFormatError):
            verify_document(k3_document)

    def test_not_an_object(self):
        with pytest.raises(CertificateFormatError):
            verify_document([1, 2, 3])

    def test_mistyped_field(self, k3_document):
        """Booleans are not integers."""
        k3_document["config"]["s"] = True

        with pytest.raises(CertificateFormatError):
            verify_document(k3_document)

    def test_unknown_verdict(self, k3_document):
        k3_document["verdict"] = "Smooth"

        with pytest.raises(CertificateFormatError):
            verify_document(k3_document)

    def test_not_prime(self, k3_document):
        """Semantic problems are rejections with a label."""
        k3_document["p"] = 12
        result = verify_document(k3_document)

        assert not result.accepted
        assert result.labels == [FailureLabel.NOT_PRIME]

    def test_length_mismatch(self, k3_document):
        k3_document["config"]["m_prime"] = 15

        assert verify_document(k3_document).labels == [FailureLabel.LENGTH_MISMATCH]

    def test_invalid_weight(self, k3_document):
        k3_document["cp2bar_weights"][0] = [-1, 1, 3]

        assert verify_document(k3_document).labels == [FailureLabel.INVALID_WEIGHT]

    def test_verdict_mismatch(self, k3_document):
        k3_document["verdict"] = VerdictKind.VIOLATES_LOWER.value

        assert verify_document(k3_document).labels == [FailureLabel.VERDICT_MISMATCH]


# =============================================================================
# Single-field mutations
# =============================================================================

def _bump_p(doc, data):
    doc["p"] += 1
    return True


def _bump_betti(doc, data):
    key = data.draw(strategies.sampled_from(["b2_plus", "b2_minus"]))
    doc["manifold"][key] += data.draw(strategies.sampled_from([-1, 1]))
    return True


def _toggle_spin(doc, data):
    doc["manifold"]["spin"] = not doc["manifold"]["spin"]
    return True


def _bump_config(doc, data):
    key = data.draw(strategies.sampled_from(["m", "m_prime", "r", "s"]))
    doc["config"][key] += data.draw(strategies.sampled_from([-1, 1]))
    return True


def _bump_weight_entry(doc, data):
    rows = doc["cp2_weights"] + doc["cp2bar_weights"]
    if not rows:
        return False
    row = data.draw(strategies.sampled_from(rows))
    row[data.draw(strategies.integers(0, 2))] += 1
    return True


def _zero_sphere_entry(doc, data):
    if not doc["s4_weights"]:
        return False
    row = data.draw(strategies.sampled_from(doc["s4_weights"]))
    row[data.draw(strategies.integers(0, 1))] = doc["p"]
    return True


def _break_matching(doc, data):
    if not doc["matching"]:
        return False
    pair = data.draw(strategies.sampled_from(doc["matching"]))
    config = doc["config"]
    points = 3 * (config["m"] + config["m_prime"]) + 2 * config["r"]
    if data.draw(strategies.booleans()):
        pair[1] = pair[0]
    else:
        pair[1] = points
    return True


def _bump_index(doc, data):
    key = data.draw(strategies.sampled_from(["dim", "sum_alpha", "sum_alpha_prime"]))
    doc["index"][key] += data.draw(strategies.sampled_from([-1, 1]))
    return True


def _change_verdict(doc, data):
    others = [kind.value for kind in VerdictKind if kind.value != doc["verdict"]]
    doc["verdict"] = data.draw(strategies.sampled_from(others))
    return True


def _toggle_orientation(doc, data):
    doc["orientation_flipped"] = not doc["orientation_flipped"]
    return True


def _shift_weight_entry(doc, data):
    rows = doc["cp2_weights"] + doc["cp2bar_weights"] + doc["s4_weights"]
    if not rows:
        return False
    row = data.draw(strategies.sampled_from(rows))
    row[data.draw(strategies.integers(0, len(row) - 1))] += data.draw(strategies.sampled_from([-2, 2]))
    return True


def _advance_prime(doc, data):
    doc["p"] = int(nextprime(doc["p"]))
    return True


MUTATIONS = [
    _bump_p,
    _bump_betti,
    _toggle_spin,
    _bump_config,
    _bump_weight_entry,
    _zero_sphere_entry,
    _break_matching,
    _bump_index,
    _change_verdict,
    _toggle_orientation,
]

# Parity and primality survive these, so the weights often stay valid and
# the verifier has to recompute the matching and the index to decide.
RECOMPUTED_MUTATIONS = [_shift_weight_entry, _advance_prime]


class TestTamperResistance:
    """Single-field mutations of a valid certificate are rejected or re-derived."""

    def test_originals_verify(self):
        for text in valid_documents():
            assert verify_document(json.loads(text)).accepted

    @settings(max_examples=1000, deadline=None)
    @given(strategies.data())
    def test_mutations_rejected(self, data):
        doc = json.loads(data.draw(strategies.sampled_from(valid_documents())))
        mutation = data.draw(strategies.sampled_from(MUTATIONS))
        mutated = copy.deepcopy(doc)
        if not mutation(mutated, data):
            return

        try:
            result = verify_document(mutated)
        except CertificateFormatError:
            return
        assert not result.accepted, f"{mutation.__name__} was accepted"

    @settings(max_examples=500, deadline=None)
    @given(strategies.data())
    def test_valid_weight_mutations_are_recomputed(self, data):
        """An accepted mutant must hold up as a certificate in its own right."""
        doc = json.loads(data.draw(strategies.sampled_from(valid_documents())))
        mutation = data.draw(strategies.sampled_from(RECOMPUTED_MUTATIONS))
        mutated = copy.deepcopy(doc)
        if not mutation(mutated, data):
            return

        try:
            result = verify_document(mutated)
        except CertificateFormatError:
            return
        if not result.accepted:
            assert result.diagnostics
            return

        cert = certificate_from_dict(mutated)
        oriented = cert.oriented_manifold
        check_matching(configuration_fixed_points(cert.config), cert.matching)
        assert check_arithmetic(cert.config, oriented).arithmetic_ok
        index = invariant_index_dim(cert.config, oriented)
        assert index.to_dict() == mutated["index"]
        verdict = smoothness_window(index.dim, oriented)
        assert verdict.kind.violates
        assert verdict.kind.value == mutated["verdict"]
