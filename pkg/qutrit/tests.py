import numpy as np
from django.test import SimpleTestCase, override_settings

from qec.exceptions import WordError
from qutrit import gpauli, statevec
from qutrit.gpauli import OMEGA, OMEGA_POWERS, PauliWord, QutritOp


def word(text):
    return PauliWord.parse(text)


class PauliWordTests(SimpleTestCase):

    def test_parse_and_label(self):
        p = word("w^2 Z1 I X2")
        self.assertEqual(p.phase, 2)
        self.assertEqual(p.ops, (QutritOp(0, 1), QutritOp(), QutritOp(2, 0)))
        self.assertEqual(p.label(), "w^2 Z1 I X2")
        self.assertEqual(word("Y12 I").label(), "Y12 I")

    def test_parse_rejects_bad_tokens(self):
        for text in ("Q1 I", "w^x Z1", "", "w^1"):
            with self.subTest(text=text):
                with self.assertRaises(WordError):
                    word(text)

    def test_weight_support_and_type(self):
        p = word("Z1 I Z2 I I Z1 I")
        self.assertEqual(p.n, 7)
        self.assertEqual(p.weight, 3)
        self.assertEqual(p.support, (0, 2, 5))
        self.assertTrue(p.is_z_type)
        self.assertFalse(p.is_x_type)
        self.assertEqual(word("Y21 X1").x_part().label(), "X2 X1")
        self.assertEqual(word("Y21 X1").z_part().label(), "Z1 I")

    def test_reordering_phase(self):
        # Z X = w X Z
        self.assertEqual(gpauli.multiply(word("Z1"), word("X1")).label(), "w^1 Y11")
        self.assertEqual(gpauli.multiply(word("X1"), word("Z1")).label(), "Y11")

    def test_multiply_matches_matrices(self):
        pairs = [("Y12 X1", "Z2 Y21"), ("w^1 X2 Z1", "Y11 Y22"), ("I Z1", "X1 I")]
        for a, b in pairs:
            with self.subTest(a=a, b=b):
                product = gpauli.to_matrix(gpauli.multiply(word(a), word(b)))
                self.assertTrue(np.allclose(product, gpauli.to_matrix(word(a)) @ gpauli.to_matrix(word(b))))

    def test_inverse_and_power(self):
        for text in ("w^1 Y12 X2 Z1", "Y22 Y11", "X1 X1 X1"):
            p = word(text)
            with self.subTest(word=text):
                self.assertEqual(gpauli.multiply(p, gpauli.inverse(p)), gpauli.identity(p.n))
                self.assertEqual(gpauli.power(p, 3), gpauli.identity(p.n))
                self.assertEqual(gpauli.power(p, 4), p)
                self.assertEqual(gpauli.power(p, 2), gpauli.inverse(p))

    def test_commutation_phase(self):
        s, e = word("X1"), word("Z1")
        c = gpauli.commutation_phase(s, e)
        self.assertEqual(c, 2)
        ms, me = gpauli.to_matrix(s), gpauli.to_matrix(e)
        self.assertTrue(np.allclose(ms @ me, OMEGA_POWERS[c] * (me @ ms)))
        self.assertTrue(gpauli.commutes(word("X1 X1"), word("Z1 Z2")))
        self.assertFalse(gpauli.commutes(word("X1 X1"), word("Z1 Z1")))

    def test_commutation_phase_is_antisymmetric(self):
        words = [PauliWord((gpauli.op_from_name(a), gpauli.op_from_name(b)))
                 for a in gpauli.OPERATOR_NAMES for b in gpauli.OPERATOR_NAMES]
        for s in words:
            for e in words:
                self.assertEqual(gpauli.commutation_phase(s, e), (-gpauli.commutation_phase(e, s)) % 3,
                                 f"{s} vs {e}")

    def test_size_mismatch(self):
        with self.assertRaises(WordError):
            gpauli.multiply(word("X1"), word("X1 I"))

    def test_dense_matrix_limit(self):
        with self.assertRaises(WordError):
            gpauli.to_matrix(word("X1 I I I"))
        with override_settings(QEC_CONFIG={"MAX_MATRIX_QUTRITS": 4}):
            self.assertEqual(gpauli.to_matrix(word("X1 I I I")).shape, (81, 81))


class StateVecTests(SimpleTestCase):

    def test_ket_indexing_is_big_endian(self):
        self.assertEqual(statevec.ket_index("0000001"), 1)
        self.assertEqual(statevec.ket_index("1000000"), 729)
        self.assertEqual(statevec.index_ket(5, 3), "012")
        with self.assertRaises(WordError):
            statevec.ket_index("0130")

    def test_register_bounds(self):
        with self.assertRaises(WordError):
            statevec.StateVec(2, np.zeros(3, dtype=complex))
        with self.assertRaises(WordError):
            statevec.basis_state("0" * 9)

    def test_clock_and_shift(self):
        shifted = statevec.apply_word(statevec.basis_state("02"), word("X1 X1"))
        self.assertAlmostEqual(shifted.amplitude("10"), 1.0)
        phased = statevec.apply_word(statevec.basis_state("1"), word("Z1"))
        self.assertAlmostEqual(phased.amplitude("1"), OMEGA)

    def test_apply_word_matches_matrix(self):
        rng = np.random.default_rng(7)
        amps = rng.normal(size=9) + 1j * rng.normal(size=9)
        s = statevec.normalize(statevec.StateVec(2, amps))
        for text in ("w^1 Y12 X2", "Z2 Y21", "I Y22"):
            with self.subTest(word=text):
                expected = gpauli.to_matrix(word(text)) @ s.amps
                self.assertTrue(np.allclose(statevec.apply_word(s, word(text)).amps, expected))

    def test_chrestenson(self):
        plus = statevec.apply_chrestenson(statevec.basis_state("0"), 0)
        self.assertTrue(np.allclose(plus.amps, np.ones(3) / np.sqrt(3)))
        s = statevec.from_kets(["01", "22"], [1.0, 1j])
        back = statevec.apply_chrestenson(statevec.apply_chrestenson(s, 1), 1, inverse=True)
        self.assertTrue(np.allclose(back.amps, s.amps))

    def test_chrestenson_conjugates_shift_into_clock(self):
        # Ch1 X^a Ch2 = Z^a, checked on qutrit 1 of every two-qutrit basis state.
        for power, clock in ((1, "I Z1"), (2, "I Z2")):
            shift = gpauli.from_exponents([0, power], [0, 0])
            for ket in ("00", "01", "02", "10", "11", "12", "20", "21", "22"):
                with self.subTest(power=power, ket=ket):
                    s = statevec.basis_state(ket)
                    conjugated = statevec.apply_chrestenson(
                        statevec.apply_word(statevec.apply_chrestenson(s, 1, inverse=True), shift), 1)
                    expected = statevec.apply_word(s, word(clock))
                    self.assertTrue(np.allclose(conjugated.amps, expected.amps, atol=1e-12))

    def test_controlled_sum(self):
        s = statevec.apply_cplus(statevec.basis_state("10"), 0, 1)
        self.assertAlmostEqual(s.amplitude("11"), 1.0)
        s = statevec.apply_cplus(statevec.basis_state("02"), 1, 0, times=2)
        self.assertAlmostEqual(s.amplitude("12"), 1.0)
        with self.assertRaises(WordError):
            statevec.apply_cplus(s, 1, 1)

    def test_from_kets_normalizes(self):
        s = statevec.from_kets(["00", "11", "22"])
        self.assertAlmostEqual(s.norm, 1.0)
        self.assertEqual([ket for ket, _ in s.to_triples()], ["00", "11", "22"])
        with self.assertRaises(WordError):
            statevec.from_kets([])
        with self.assertRaises(WordError):
            statevec.from_kets(["0", "11"])

    def test_global_phase(self):
        s = statevec.from_kets(["012", "120"])
        same, phase = statevec.equal_up_to_global_phase(s, statevec.scale(s, OMEGA))
        self.assertTrue(same)
        self.assertAlmostEqual(phase, OMEGA)
        other = statevec.from_kets(["012", "121"])
        self.assertEqual(statevec.equal_up_to_global_phase(s, other), (False, None))
        self.assertEqual(statevec.equal_up_to_global_phase(statevec.basis_state("0"), statevec.basis_state("1")),
                         (False, None))

    def test_global_phase_tolerance_is_on_the_overlap(self):
        s = statevec.from_kets(["012", "120"])
        # 1 - |<s|t>| is about 5e-11 while |t - s| is about 1e-5.
        t = statevec.normalize(statevec.add(s, statevec.scale(statevec.basis_state("000"), 1e-5)))
        self.assertLess(1.0 - abs(statevec.inner(s, t)), 1e-9)
        same, phase = statevec.equal_up_to_global_phase(s, t, tol=1e-9)
        self.assertTrue(same)
        self.assertAlmostEqual(phase, 1.0)
        self.assertFalse(statevec.equal_up_to_global_phase(s, t, tol=1e-12)[0])

    def test_stabilizer_eigenvalue(self):
        k, residual = statevec.stabilizer_eigenvalue(statevec.basis_state("12"), word("Z1 Z1"))
        self.assertEqual(k, 0)
        self.assertLess(residual, 1e-12)
        k, _ = statevec.stabilizer_eigenvalue(statevec.basis_state("10"), word("Z1 I"))
        self.assertEqual(k, 1)
        k, residual = statevec.stabilizer_eigenvalue(statevec.from_kets(["0", "1"]), word("Z1"))
        self.assertIsNone(k)
        self.assertGreater(residual, 0.1)
