import numpy as np
from django.test import SimpleTestCase

from qec import circuit as qcircuit
from qec import code as qcode
from qec import oracle, stabgen
from qec.code import Syndrome
from qec.exceptions import (
    AncillaNotDefinite,
    CircuitError,
    GenerationFailed,
    InvalidPair,
    PairUnsupported,
    SearchExhausted,
    UnknownCode,
    UnrecognizedSyndrome,
    WordError,
)
from qutrit import gpauli, statevec
from qutrit.gpauli import PauliWord

WORKED_EXAMPLE_SET = [
    "Z2 Z1 Z2 Z1 I I I",
    "I I I Z2 Z1 Z2 Z1",
    "Z1 I Z1 Z2 I Z2 I",
    "Z1 I I Z2 I Z2 Z1",
]


def word(text):
    return PauliWord.parse(text)


def proposed():
    return qcode.build_proposed_code()


def steane():
    return qcode.build_steane_ternary()


class CodeConstructionTests(SimpleTestCase):

    def test_invariants_hold(self):
        self.assertEqual(qcode.invariant_failures(proposed()), [])
        self.assertEqual(qcode.invariant_failures(steane()), [])

    def test_partition_stabilizers(self):
        s1, s2 = qcode.partition_stabilizers(7)
        self.assertEqual(s1.label(), "X1 I X2 I X1 I X2")
        self.assertEqual(s2.label(), "I X1 I X2 I X1 I")
        with self.assertRaises(WordError):
            qcode.partition_stabilizers(2)

    def test_printed_steane_words_do_not_commute(self):
        printed = [word(w) for w in qcode.STEANE_PRINTED_STABILIZERS]
        self.assertFalse(gpauli.commutes(printed[0], printed[3]))

    def test_zero_codeword_is_the_partition_orbit(self):
        c = proposed()
        s1, s2 = (c.stabilizers[i] for i in c.phase_indices)
        orbit = set()
        for a in range(3):
            for b in range(3):
                shifted = statevec.apply_word(statevec.basis_state("0" * 7),
                                              gpauli.multiply(gpauli.power(s1, a), gpauli.power(s2, b)))
                [(ket, _)] = shifted.to_triples()
                orbit.add(ket)
        kets = {ket for ket, _ in c.logical[0].to_triples()}
        self.assertEqual(len(kets), 9)
        self.assertEqual(kets, orbit)

    def test_single_error_enumeration(self):
        errors = qcode.single_qutrit_errors(7)
        self.assertEqual(len(errors), 56)
        self.assertEqual([e.label() for e in errors[:3]], ["X1 I I I I I I", "X2 I I I I I I", "Z1 I I I I I I"])

    def test_unknown_code(self):
        with self.assertRaises(UnknownCode):
            qcode.get_code("nosuch")

    def test_random_logical_states_are_reproducible(self):
        first = qcode.random_logical_states(proposed())
        second = qcode.random_logical_states(proposed())
        self.assertEqual(len(first), 3)
        for a, b in zip(first, second):
            self.assertTrue(np.allclose(a.amps, b.amps))
            self.assertAlmostEqual(a.norm, 1.0)


class SyndromeAndDecodeTests(SimpleTestCase):

    def test_phase_error_syndromes(self):
        c = proposed()
        self.assertEqual(qcode.syndrome_symplectic(c, gpauli.single(7, 0, "Z1")).exps, (2, 0, 0, 0, 0, 0))
        self.assertEqual(qcode.syndrome_symplectic(c, gpauli.single(7, 3, "Z2")).exps, (0, 2, 0, 0, 0, 0))

    def test_bit_error_syndromes(self):
        c = proposed()
        self.assertEqual(qcode.syndrome_symplectic(c, gpauli.single(7, 3, "X1")).exps, (0, 0, 2, 1, 1, 2))
        self.assertEqual(qcode.syndrome_symplectic(c, gpauli.single(7, 0, "X1")).exps, (0, 0, 1, 0, 0, 0))

    def test_statevector_syndrome_agrees(self):
        c = proposed()
        for e in (gpauli.single(7, 0, "Z1"), gpauli.single(7, 5, "Y21"), gpauli.single(7, 3, "X1")):
            with self.subTest(error=e.label()):
                errored = statevec.apply_word(c.logical[1], e)
                self.assertEqual(qcode.syndrome_statevector(c, errored), qcode.syndrome_symplectic(c, e))

    def test_g1_and_g2_phase_errors_decompose(self):
        c = proposed()

        def phase_syndrome(e):
            return qcode.syndrome_symplectic(c, e).restrict(c.phase_indices)

        for q1 in c.g1:
            for q2 in c.g2:
                for n1 in ("Z1", "Z2"):
                    for n2 in ("Z1", "Z2"):
                        e1, e2 = gpauli.single(7, q1, n1), gpauli.single(7, q2, n2)
                        with self.subTest(first=e1.label(), second=e2.label()):
                            first, second = phase_syndrome(e1), phase_syndrome(e2)
                            self.assertEqual(first[1], 0)
                            self.assertEqual(second[0], 0)
                            self.assertEqual(phase_syndrome(gpauli.multiply(e1, e2)), (first[0], second[1]))

    def test_decoder_picks_lowest_index_qutrit(self):
        c = proposed()
        syn = qcode.syndrome_symplectic(c, gpauli.single(7, 4, "Z1"))
        self.assertEqual(qcode.decode(c, syn), gpauli.single(7, 0, "Z2"))

    def test_degenerate_correction(self):
        c = proposed()
        state = qcode.encode(c, [1.0, 2.0j, -0.5])
        errored = statevec.apply_word(state, gpauli.single(7, 4, "Z1"))
        self.assertAlmostEqual(statevec.fidelity(qcode.correct(c, errored), state), 1.0)

    def test_unregistered_syndrome(self):
        with self.assertRaises(UnrecognizedSyndrome):
            qcode.decode(proposed(), Syndrome((0, 0, 1, 1, 1, 1)))

    def test_pair_error_correction_with_default_set(self):
        c = proposed()
        state = qcode.encode(c, [0.3, 1.0, 1j])
        pair_error = word("X2 I I I I I X1")
        corrected = qcode.correct(c, statevec.apply_word(state, pair_error))
        self.assertAlmostEqual(statevec.fidelity(corrected, state), 1.0)


class KnillLaflammeAndDegeneracyTests(SimpleTestCase):

    def test_steane_satisfies_kl(self):
        c = steane()
        errors = (gpauli.identity(7),) + qcode.single_qutrit_errors(7)
        self.assertTrue(qcode.kl_check(c, errors).passed)

    def test_proposed_fails_kl_on_z_pair(self):
        c = proposed()
        report = qcode.kl_check(c, [gpauli.single(7, 0, "Z1"), gpauli.single(7, 2, "Z2")])
        self.assertFalse(report.passed)
        self.assertTrue(all(entry.offdiag_zero for entry in report.entries))

    def test_degenerate_phase_errors_on_zero_codeword(self):
        c = proposed()
        zero = c.logical[0]
        first = statevec.apply_word(zero, gpauli.single(7, 0, "Z1"))
        second = statevec.apply_word(zero, gpauli.single(7, 2, "Z2"))
        same, phase = statevec.equal_up_to_global_phase(first, second)
        self.assertTrue(same)
        self.assertAlmostEqual(phase, 1.0)

    def test_degeneracy_classes_on_g1(self):
        c = proposed()
        errors = [gpauli.single(7, q, "Z1") for q in c.g1]
        classes = qcode.degeneracy_classes(c, errors)
        labels = [[e.support[0] for e in members] for members in classes]
        self.assertEqual(labels, [[0, 4], [2, 6]])

    def test_weight_two_logical_action(self):
        action = qcode.logical_action(proposed(), word("Z1 I Z1 I I I I"))
        self.assertEqual(action.targets, (0, 1, 2))
        self.assertEqual(action.phases, (0, 2, 1))
        self.assertFalse(action.is_identity)

    def test_shift_is_logical_x(self):
        action = qcode.logical_action(proposed(), gpauli.x_word([1] * 7))
        self.assertEqual(action.targets, (1, 2, 0))


class OracleTests(SimpleTestCase):

    def test_steane_single_sweep(self):
        report = oracle.sweep_single_errors(steane())
        self.assertEqual(report.total, 56)
        self.assertTrue(report.all_corrected)

    def test_y11_on_q2_is_a_logical_fault_on_the_proposed_code(self):
        report = oracle.sweep_single_errors(proposed(), [gpauli.single(7, 2, "Y11")])
        self.assertEqual(report.outcomes[0].outcome, oracle.Outcome.LOGICAL_FAULT)

    def test_phase_pattern_slice(self):
        patterns = list(oracle.phase_patterns(7, 0, 3))
        self.assertEqual([p.label() for p in patterns],
                         ["I I I I I I I", "I I I I I I Z1", "I I I I I I Z2"])
        report = oracle.sweep_phase_patterns(proposed(), 0, 10)
        self.assertEqual(report.total, 10)
        self.assertEqual(report.outcomes[0].outcome, oracle.Outcome.CORRECTED)
        self.assertEqual(sum(report.counts.values()), 10)

    def test_merge_requires_same_sweep(self):
        a = oracle.SweepReport("phase-sweep", "proposed")
        with self.assertRaises(ValueError):
            a.merge(oracle.SweepReport("single", "proposed"))

    def test_low_weight_logicals(self):
        self.assertEqual(oracle.find_low_weight_logicals(steane(), 2), [])
        self.assertEqual(oracle.find_low_weight_logicals(proposed(), 1), [])
        found = [f.word for f in oracle.find_low_weight_logicals(proposed(), 2)]
        self.assertIn(word("Z1 I Z1 I I I I"), found)
        with self.assertRaises(WordError):
            oracle.find_low_weight_logicals(proposed(), 4)

    def test_check_pair(self):
        self.assertEqual(oracle.check_pair(7, (4, 1)), (1, 4))
        for pair in ((3, 3), (0, 7), ("a", 1), (1,)):
            with self.subTest(pair=pair):
                with self.assertRaises(InvalidPair):
                    oracle.check_pair(7, pair)

    def test_lemma4_witnesses(self):
        c = proposed()
        witness = oracle.lemma4_search(c, (1, 3))
        self.assertEqual(witness.valid_stabilizers, 81)
        self.assertNotEqual(witness.first, witness.second)
        self.assertTrue(witness.same_action)
        with self.assertRaises(InvalidPair):
            oracle.lemma4_search(c, (0, 6))

    def test_pair_error_check(self):
        c = proposed()
        default = c.bit_stabilizers
        worked = [word(w) for w in WORKED_EXAMPLE_SET]
        self.assertTrue(oracle.pair_error_check(c, default, (0, 6)))
        self.assertTrue(oracle.pair_error_check(c, worked, (1, 4)))
        self.assertFalse(oracle.pair_error_check(c, default, (1, 3)))

    def test_pair_error_colliding_with_a_single_error(self):
        problems = oracle.pair_error_problems(proposed().bit_stabilizers, (0, 4))
        self.assertIn("X2 I I I X2 I I shares syndrome (2, 1, 1, 2) with single error I I I X1 I I I", problems)


class StabilizerGenerationTests(SimpleTestCase):

    def test_worked_example(self):
        zset, trace = stabgen.generate((1, 4))
        self.assertEqual(zset.labels(), WORKED_EXAMPLE_SET)
        seed = next(step for step in trace.steps if step.label == "seed")
        self.assertEqual(seed.d, (0, 1, 0, 0, 1, 0, 0))
        self.assertEqual(trace.fills()[2].d, (1, 1, 1, 1, 1, 0, 1))
        self.assertEqual(trace.final_d, (3, 1, 2, 4, 1, 3, 2))
        self.assertEqual(sum(trace.final_d), 16)

    def test_default_pair(self):
        zset, _ = stabgen.generate((0, 6))
        self.assertEqual(zset.labels(), [
            "Z1 Z2 Z1 Z2 I I I",
            "I I I Z2 Z1 Z2 Z1",
            "I Z2 Z1 Z2 Z1 I I",
            "I I Z1 Z2 Z1 Z2 I",
        ])
        self.assertTrue(stabgen.validate(zset, (0, 6)).passed)

    def test_g2_pairs_are_refused(self):
        for pair in ((1, 3), (1, 5), (3, 5)):
            with self.subTest(pair=pair):
                with self.assertRaises(PairUnsupported):
                    stabgen.generate(pair)
                with self.assertRaises(PairUnsupported):
                    stabgen.exhaustive_fallback(pair)

    def test_pairs_through_a_logical_triple_have_no_valid_set(self):
        with self.assertRaises(GenerationFailed):
            stabgen.generate((0, 3))
        with self.assertRaises(SearchExhausted):
            stabgen.exhaustive_fallback((0, 3))

    def test_fallback_set_validates(self):
        zset = stabgen.exhaustive_fallback((4, 5))
        self.assertTrue(stabgen.validate(zset, (4, 5)).passed)

    def test_validate_reports_each_predicate(self):
        c = proposed()
        report = stabgen.validate(stabgen.ZStabSet(c.bit_stabilizers), (1, 4))
        self.assertFalse(report.passed)
        self.assertFalse(report.get("exclusive").passed)
        self.assertTrue(report.get("commutes").passed)
        self.assertTrue(report.get("stabilizes").passed)
        self.assertEqual(
            [p.name for p in report.predicates],
            ["shape", "commutes", "stabilizes", "exclusive", "single-errors", "pair-errors"],
        )

    def test_zstabset_shape(self):
        with self.assertRaises(WordError):
            stabgen.ZStabSet.parse(WORKED_EXAMPLE_SET[:3])
        with self.assertRaises(WordError):
            stabgen.ZStabSet.parse(WORKED_EXAMPLE_SET[:3] + ["X1 I I Z2 I Z2 Z1"])

    def test_validate_rejects_words_of_the_wrong_length(self):
        short = stabgen.ZStabSet.parse(["Z1 Z2 Z1 Z2 I"] * 4)
        with self.assertRaises(WordError):
            stabgen.validate(short, (1, 4))

    def test_pair_lists_and_candidates(self):
        self.assertEqual(len(stabgen.all_pairs()), 21)
        self.assertEqual(len(stabgen.eligible_pairs()), 18)
        self.assertEqual(len(stabgen.candidate_words()), 24)


class CircuitTests(SimpleTestCase):

    def test_steane_costs(self):
        circ = qcircuit.build_syndrome_circuit("steane")
        report = qcircuit.cost(circ)
        self.assertEqual((report.total_gates, report.wire_depth, report.deepest_wires), (38, 8, (6,)))
        self.assertEqual(qcircuit.cost(circ, "bit").total_gates, 12)
        self.assertEqual(qcircuit.cost(circ, "phase").total_gates, 26)

    def test_signed_steane_costs(self):
        report = qcircuit.cost(qcircuit.build_syndrome_circuit("steane-signed"))
        self.assertEqual((report.total_gates, report.wire_depth), (44, 8))
        self.assertEqual(report.deepest_wires, (2, 4, 5, 6))

    def test_proposed_costs(self):
        circ = qcircuit.build_syndrome_circuit("proposed")
        report = qcircuit.cost(circ)
        self.assertEqual((report.total_gates, report.wire_depth, report.deepest_wires), (48, 10, (3,)))
        self.assertEqual(report.cplus_count + report.chrestenson_count, 48)
        phase = qcircuit.cost(circ, "phase")
        self.assertEqual((phase.total_gates, phase.wire_depth, phase.deepest_wires), (24, 4, (2, 3, 6)))
        bit = qcircuit.cost(circ, "bit")
        self.assertEqual((bit.total_gates, bit.wire_depth, bit.deepest_wires), (24, 6, (3,)))
        self.assertGreaterEqual(report.scheduled_depth, report.wire_depth)

    def test_circuit_edge_cases(self):
        empty = qcircuit.build_syndrome_circuit([])
        self.assertEqual((empty.data_wires, empty.gates), (0, ()))
        with self.assertRaises(CircuitError):
            qcircuit.build_syndrome_circuit([word("Y11 I I")])
        with self.assertRaises(UnknownCode):
            qcircuit.build_syndrome_circuit("nosuch")
        with self.assertRaises(CircuitError):
            qcircuit.cost(empty, "both")

    def test_extraction_readout(self):
        c = proposed()
        circ = qcircuit.build_syndrome_circuit(c.stabilizers)
        errored = statevec.apply_word(c.logical[0], gpauli.single(7, 0, "Z1"))
        self.assertEqual(qcircuit.simulate_extraction(circ, errored).exps, (2, 0, 0, 0, 0, 0))
        errored = statevec.apply_word(c.logical[2], gpauli.single(7, 3, "X1"))
        self.assertEqual(qcircuit.simulate_extraction(circ, errored).exps, (0, 0, 2, 1, 1, 2))

    def test_extraction_needs_definite_syndrome(self):
        c = proposed()
        circ = qcircuit.build_syndrome_circuit(c.stabilizers)
        mixed = statevec.normalize(statevec.add(
            c.logical[0], statevec.apply_word(c.logical[0], gpauli.single(7, 0, "X1"))
        ))
        with self.assertRaises(AncillaNotDefinite):
            qcircuit.simulate_extraction(circ, mixed)
        with self.assertRaises(CircuitError):
            qcircuit.simulate_extraction(circ, statevec.basis_state("000"))

    def test_comparison_rows(self):
        rows = qcircuit.table3_report()
        self.assertEqual(len(rows), 5)
        self.assertEqual([r.computed for r in rows[:2]], [False, False])
        self.assertEqual((rows[2].label, rows[2].total), ("Ternary Steane", 38))

    def test_wire_diagram(self):
        circ = qcircuit.build_syndrome_circuit("proposed")
        lines = qcircuit.render_wire_diagram(circ).splitlines()
        self.assertEqual(len(lines), circ.wire_count)
        self.assertTrue(lines[0].strip().startswith("q0"))
        self.assertTrue(lines[-1].strip().startswith("a5"))
