import io
import json
from unittest import mock

from django.conf import settings
from django.core.management import ManagementUtility, call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from qec.code import build_proposed_code, build_steane_ternary
from qec.exceptions import UnknownCode
from verification import reference_values, reports, suites
from verification.cli import parse_pair
from verification.serializers import CodeSerializer, PairSerializer, ZStabSetSerializer
from verification.tasks import (
    dispatch_phase_sweep,
    merge_phase_chunks,
    run_verification_suite,
    running_in_worker,
    sweep_phase_chunk,
)


def run(*args, **options):
    out = io.StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


def run_json(*args, **options):
    return json.loads(run(*args, format='json', **options))


class SerializerTests(SimpleTestCase):

    def test_code_document(self):
        data = CodeSerializer(build_proposed_code()).data
        self.assertEqual(data["n"], 7)
        self.assertEqual(data["stabilizers"][0], "X1 I X2 I X1 I X2")
        self.assertEqual(data["g2"], [1, 3, 5])
        self.assertEqual(data["bit_pair"], [0, 6])
        self.assertEqual(data["phase_table"]["2,0"], "Z2 I I I I I I")
        self.assertIsNone(data["logical"])

        full = CodeSerializer(build_steane_ternary(), context={"full": True}).data
        self.assertIsNone(full["bit_pair"])
        self.assertEqual(len(full["logical"]), 3)
        ket, re, im = full["logical"][0][0]
        self.assertEqual(ket, "0000000")

    def test_stabilizer_set_validation(self):
        good = ZStabSetSerializer(data={"words": list(reference_values.WORKED_EXAMPLE_SET)})
        self.assertTrue(good.is_valid(), good.errors)
        self.assertEqual(good.to_zset().labels(), list(reference_values.WORKED_EXAMPLE_SET))

        bad = ZStabSetSerializer(data={"words": ["X1 I I I I I I"] + list(reference_values.WORKED_EXAMPLE_SET[1:])})
        self.assertFalse(bad.is_valid())
        short = ZStabSetSerializer(data={"words": list(reference_values.WORKED_EXAMPLE_SET[:2])})
        self.assertFalse(short.is_valid())
        garbled = ZStabSetSerializer(data={"words": ["Z3 I"] * 4})
        self.assertFalse(garbled.is_valid())
        five_qutrit = ["Z1 Z2 Z1 Z2 I"] * 4
        self.assertTrue(ZStabSetSerializer(data={"words": five_qutrit}).is_valid())
        self.assertFalse(ZStabSetSerializer(data={"words": five_qutrit}, context={"n": 7}).is_valid())

    def test_pair_parsing(self):
        self.assertEqual(parse_pair("1,4"), (1, 4))
        self.assertEqual(parse_pair(" 6, 0 "), (6, 0))
        self.assertFalse(PairSerializer(data={"pair": "1;4"}).is_valid())
        self.assertFalse(PairSerializer(data={"pair": "1,2,3"}).is_valid())

    def test_envelope(self):
        document = json.loads(reports.render_json("demo", {"a": [1, 2]}))
        self.assertEqual(document["schema"], "demo")
        self.assertEqual(document["version"], settings.QEC_CONFIG["REPORT_SCHEMA_VERSION"])
        self.assertEqual(document["data"], {"a": [1, 2]})


class ReportTests(SimpleTestCase):

    def test_phase_table_rows(self):
        rows = reports.phase_table_rows(build_proposed_code())
        derived = [(r["operator"], tuple(r["syndrome"]), tuple(r["qutrits"])) for r in rows]
        self.assertEqual(derived, list(reference_values.PHASE_TABLE))

    def test_bit_table_discrepancies(self):
        rows = reports.bit_table_rows(build_proposed_code())
        self.assertEqual(len(rows), 14)
        self.assertEqual(rows[0]["discrepancies"], [])
        self.assertEqual(rows[3]["syndrome"], [2, 1, 1, 2])
        self.assertEqual(rows[3]["printed"], [1, 1, 1, 1])
        self.assertEqual(rows[3]["discrepancies"], ["S3", "S6"])

        self.assertEqual((rows[10]["operator"], rows[10]["qutrit"]), ("X2", 3))
        self.assertEqual(rows[10]["syndrome"], [1, 2, 2, 1])
        self.assertEqual(rows[10]["printed"], [2, 2, 2, 2])
        self.assertEqual(rows[10]["discrepancies"], ["S3", "S6"])
        self.assertEqual(rows[7]["discrepancies"], [])

    def test_x2_rows_conjugate_x1_rows(self):
        for code in (build_proposed_code(), build_steane_ternary()):
            rows = reports.bit_table_rows(code)
            x1 = {r["qutrit"]: r["syndrome"] for r in rows if r["operator"] == "X1"}
            for row in rows[code.n:]:
                with self.subTest(code=code.name, qutrit=row["qutrit"]):
                    self.assertEqual(row["operator"], "X2")
                    self.assertEqual(row["syndrome"], [(-k) % 3 for k in x1[row["qutrit"]]])
                    self.assertEqual([bool(k) for k in row["syndrome"]], [bool(k) for k in x1[row["qutrit"]]])

    def test_steane_bit_table_has_no_printed_column(self):
        rows = reports.bit_table_rows(build_steane_ternary())
        self.assertTrue(all(r["printed"] is None for r in rows))

    def test_markdown_table(self):
        table = reports.markdown_table(["A", "B"], [[1, "ω"]])
        self.assertEqual(table.splitlines(), ["| A | B |", "|---|---|", "| 1 | ω |"])


class SuiteTests(SimpleTestCase):

    def test_lemma1(self):
        [result] = suites.run_suite("lemma1")
        self.assertTrue(result.passed)
        self.assertEqual(len(result.findings["combinations"]), 16)
        self.assertEqual(sum(1 for row in result.findings["combinations"] if row["commute"]), 8)

    def test_unknown_suite_and_code(self):
        with self.assertRaises(UnknownCode):
            suites.run_suite("nosuch")
        with self.assertRaises(UnknownCode):
            suites.run_suite("lemma4", "steane")
        with self.assertRaises(UnknownCode):
            suites.run_suite("single", "nosuch")

    def test_stabilize_on_both_codes(self):
        results = suites.run_suite("stabilize")
        self.assertEqual([r.code for r in results], ["proposed", "steane"])
        self.assertTrue(all(r.passed for r in results))

    def test_kl_is_report_only_on_the_proposed_code(self):
        [result] = suites.run_suite("kl", "proposed")
        self.assertTrue(result.report_only)
        self.assertTrue(result.passed)
        self.assertFalse(result.checks[0].passed)
        self.assertIsNone(result.first_failure)

    def test_tables_and_pairs(self):
        for name in ("tables", "pairs", "lemma4", "degeneracy"):
            with self.subTest(suite=name):
                [result] = suites.run_suite(name, "proposed")
                self.assertTrue(result.passed, result.first_failure)

    def test_syndrome_paths_agree(self):
        for result in suites.run_suite("syndromes"):
            self.assertTrue(result.passed, result.first_failure)

    def test_stabgen_coverage(self):
        [result] = suites.run_suite("stabgen")
        self.assertTrue(result.passed, result.first_failure)
        coverage = result.findings["coverage"]
        supported = sorted(pair for pair, entry in coverage.items() if entry["method"])
        self.assertEqual(supported, sorted([
            "0,1", "0,2", "0,5", "0,6", "1,2", "1,4", "1,6", "2,4", "2,5", "4,5", "4,6", "5,6",
        ]))
        claim = next(c for c in result.checks if not c.asserted)
        self.assertFalse(claim.passed)

    def test_cost(self):
        [result] = suites.run_suite("cost")
        self.assertTrue(result.passed, result.first_failure)
        self.assertEqual(result.code, suites.CODE_INDEPENDENT)

    def test_failed_check_is_reported(self):
        with mock.patch("verification.suites.invariant_failures", return_value=["S3 does not fix |0_L>"]):
            [result] = suites.run_suite("stabilize", "proposed")
        self.assertFalse(result.passed)
        self.assertEqual(result.first_failure.name, "code invariants")


class TaskTests(SimpleTestCase):

    def test_phase_chunk_rows(self):
        rows = sweep_phase_chunk.delay("proposed", 0, 5).get()
        self.assertEqual(len(rows), 5)
        self.assertEqual(rows[0], [0, "corrected", [0, 0, 0, 0, 0, 0], "I I I I I I I"])
        self.assertEqual([row[0] for row in rows], [0, 1, 2, 3, 4])

    def test_dispatch_merges_chunks(self):
        chunked = {**settings.QEC_CONFIG, "PHASE_SWEEP_CHUNK": 729}
        with override_settings(QEC_CONFIG=chunked):
            report = dispatch_phase_sweep("steane")
        self.assertEqual(report.total, 3 ** 7)
        self.assertEqual(sum(report.counts.values()), 3 ** 7)
        self.assertEqual(report.outcomes[1].error.label(), "I I I I I I Z1")
        self.assertEqual(report.by_weight[1].get("corrected", 0) + report.by_weight[1].get("degenerate-corrected", 0), 14)

    def test_merge_callback_orders_chunks(self):
        later, earlier = [[5, "corrected", [0], None]], [[0, "corrected", [0], None]]
        self.assertEqual(merge_phase_chunks([later, [], earlier]), [earlier, later])

    def test_sweep_runs_inline_inside_a_worker_task(self):
        with mock.patch("verification.tasks.running_in_worker", return_value=True), \
                mock.patch("verification.tasks.chord") as fan_out:
            report = dispatch_phase_sweep("proposed")
        fan_out.assert_not_called()
        self.assertEqual(report.total, 3 ** 7)
        self.assertEqual(report.outcomes[0].outcome.value, "corrected")

    def test_outside_a_worker_the_sweep_is_fanned_out(self):
        self.assertFalse(running_in_worker())

    def test_run_verification_suite(self):
        [data] = run_verification_suite.delay("lemma1").get()
        self.assertEqual(data["suite"], "lemma1")
        self.assertTrue(data["passed"])


class CommandTests(SimpleTestCase):

    def assertExitCode(self, expected_exit, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            run(*args, **options)
        self.assertEqual(ctx.exception.returncode, expected_exit)
        return ctx.exception

    def test_tables(self):
        document = run_json('tables', code='proposed', which='phase')
        self.assertEqual(document["schema"], "phase-table")
        self.assertEqual(len(document["data"]["rows"]), 8)
        output = run('tables', code='proposed', which='bit')
        self.assertIn("S3, S6", output)

    def test_unknown_code_exits_with_usage_error(self):
        utility = ManagementUtility(['manage.py', 'tables', '--code', 'nosuch'])
        with mock.patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                utility.execute()
        self.assertEqual(ctx.exception.code, 2)
        self.assertExitCode(2, 'verify', suite='lemma4', code='steane')

    def test_verify_lemma1(self):
        output = run('verify', suite='lemma1')
        self.assertIn("16/16", output)
        self.assertIn("PASS", output)

    def test_verify_single_on_steane(self):
        document = run_json('verify', suite='single', code='steane', fidelity_tol=1e-6)
        [result] = document["data"]
        self.assertTrue(result["passed"])
        counts = result["findings"]["sweep"]["counts"]
        self.assertEqual(counts["corrected"] + counts["degenerate-corrected"], 56)
        self.assertIsNone(result["findings"]["sweep"]["outcomes"])

    def test_verify_phase_sweep_is_report_only(self):
        output = run('verify', suite='phase-sweep', code='proposed')
        self.assertIn("REPORT", output)

    def test_verify_failure_exits_one(self):
        with mock.patch("verification.suites.invariant_failures", return_value=["S3 does not fix |0_L>"]):
            error = self.assertExitCode(1, 'verify', suite='stabilize', code='proposed')
        self.assertIn("code invariants", str(error))

    def test_verify_enqueue_runs_eagerly(self):
        output = run('verify', suite='lemma1', enqueue=True, stderr=io.StringIO())
        self.assertIn("lemma1 (-): PASS", output)

    def test_stabgen_worked_example(self):
        document = run_json('stabgen', pair='1,4')
        data = document["data"]
        self.assertEqual(data["set"]["words"], list(reference_values.WORKED_EXAMPLE_SET))
        self.assertEqual(data["method"], "greedy")
        self.assertTrue(data["validation"]["passed"])
        self.assertEqual(data["trace"]["final_d"], [3, 1, 2, 4, 1, 3, 2])

    def test_stabgen_default_pair_and_given_set(self):
        self.assertIn("PASS", run('stabgen', pair='0,6'))
        output = run('stabgen', pair='1,4', words=";".join(reference_values.WORKED_EXAMPLE_SET))
        self.assertIn("(given)", output)

    def test_stabgen_exit_codes(self):
        error = self.assertExitCode(3, 'stabgen', pair='1,3')
        self.assertIn("g2", str(error))
        self.assertExitCode(3, 'stabgen', pair='3,5', fallback=True)
        self.assertExitCode(1, 'stabgen', pair='0,3')
        self.assertExitCode(1, 'stabgen', pair='0,3', fallback=True)
        self.assertExitCode(2, 'stabgen', pair='1,x')
        self.assertExitCode(2, 'stabgen', pair='1,9')
        self.assertExitCode(2, 'stabgen', pair='1,4', words="Z1 I;Z2 I")
        self.assertExitCode(2, 'stabgen', pair='1,4', words=";".join(["Z1 Z2 Z1 Z2 I"] * 4))
        self.assertExitCode(1, 'stabgen', pair='1,4', words=";".join(build_proposed_code().bit_stabilizers[k].label()
                                                                       for k in range(4)))

    def test_cost(self):
        document = run_json('cost', code='steane')
        self.assertEqual(document["data"]["cost"]["total_gates"], 38)
        self.assertEqual(document["data"]["cost"]["wire_depth"], 8)
        document = run_json('cost', code='proposed', diagram=True)
        self.assertEqual(document["data"]["cost"]["total_gates"], 48)
        self.assertEqual(document["data"]["cost"]["wire_depth"], 10)
        self.assertEqual(document["data"]["circuit"]["wire_count"], 13)

    def test_cost_comparison(self):
        document = run_json('cost', code='all')
        rows = document["data"]["rows"]
        self.assertEqual([r["computed"] for r in rows], [False, False, True, True, True])
        self.assertEqual((rows[2]["total"], rows[3]["total"]), (38, 48))
        self.assertIn("(quoted)", run('cost'))
        self.assertExitCode(2, 'cost', code='nosuch')
