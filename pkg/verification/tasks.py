# verification/tasks.py
import logging
from functools import reduce

from celery import chord, current_task, shared_task
from django.conf import settings

from qec.code import Syndrome, get_code
from qec.oracle import Outcome, PatternOutcome, SweepReport, sweep_phase_patterns
from qutrit import gpauli
from qutrit.gpauli import PauliWord
from verification import suites
from verification.serializers import SuiteResultSerializer

logger = logging.getLogger('verification')


# ==============================================================================
# SECTION 1: SUITES
# ==============================================================================

@shared_task(name='verification.tasks.run_verification_suite')
def run_verification_suite(suite_name, code_id=None, options=None):
    """
    Runs one suite and returns the serialized results, so a worker can hand
    them back through the result backend.
    """
    results = suites.run_suite(suite_name, code_id, suites.SuiteOptions(**(options or {})))
    return [SuiteResultSerializer(result).data for result in results]


@shared_task(name='verification.tasks.run_all_suites')
def run_all_suites():
    """Nightly run of every suite on every code it applies to."""
    summary = {}
    for name in suites.SUITES:
        try:
            results = suites.run_suite(name)
        except Exception as e:
            logger.critical(f"Suite '{name}' crashed: {e}", exc_info=True)
            summary[name] = "error"
            continue
        summary[name] = "passed" if all(r.passed for r in results) else "failed"
        for result in results:
            failure = result.first_failure
            if failure:
                logger.error(f"Suite '{name}' on {result.code} failed at '{failure.name}': {failure.detail}")
    logger.info(f"Nightly verification finished: {summary}")
    return summary


# ==============================================================================
# SECTION 2: PARALLEL PHASE SWEEP
# ==============================================================================
# The 3^n phase patterns are cut into chunks of PHASE_SWEEP_CHUNK in canonical
# order. Each chunk returns compact rows; the chord callback orders the chunks
# and the caller rebuilds one partial report per chunk and merges them.

def _pattern(n, index):
    return gpauli.z_word([(index // 3 ** (n - 1 - q)) % 3 for q in range(n)])


@shared_task(name='verification.tasks.sweep_phase_chunk')
def sweep_phase_chunk(code_id, start, stop, tol=None):
    """Classifies patterns [start, stop) and returns [index, outcome, syndrome, correction] rows."""
    report = sweep_phase_patterns(get_code(code_id), start, stop, tol)
    return [
        [start + offset, item.outcome.value, list(item.syndrome.exps),
         item.correction.label() if item.correction is not None else None]
        for offset, item in enumerate(report.outcomes)
    ]


def _report_from_rows(code, rows):
    report = SweepReport("phase-sweep", code.name)
    for index, outcome, exps, correction in rows:
        report.outcomes.append(PatternOutcome(
            error=_pattern(code.n, index),
            syndrome=Syndrome(tuple(exps)),
            outcome=Outcome(outcome),
            correction=PauliWord.parse(correction) if correction else None,
        ))
    return report


@shared_task(name='verification.tasks.merge_phase_chunks')
def merge_phase_chunks(chunks):
    """Chord callback: non-empty chunks ordered by their first pattern index."""
    return sorted((rows for rows in chunks if rows), key=lambda rows: rows[0][0])


def running_in_worker():
    """True while a task body runs on a worker (eager calls do not count)."""
    if not current_task:
        return False
    request = current_task.request
    return not request.called_directly and not request.is_eager


def dispatch_phase_sweep(code_id, tol=None):
    """
    Fans the sweep out as a chord of chunk tasks with a merge callback.

    Inside a worker the sweep runs inline instead: a task waiting on its own
    subtasks in the same queue can hold every worker process.
    """
    code = get_code(code_id)
    total = 3 ** code.n
    if running_in_worker():
        logger.info(f"[{code.name}] running {total} phase patterns inline in task {current_task.request.id}.")
        return sweep_phase_patterns(code, tol=tol)

    chunk = settings.QEC_CONFIG["PHASE_SWEEP_CHUNK"]
    bounds = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    logger.info(f"[{code.name}] dispatching {total} phase patterns in {len(bounds)} chunks.")

    # --- Step 1: Chunks in parallel, ordered by the callback ---
    header = [sweep_phase_chunk.s(code_id, start, stop, tol) for start, stop in bounds]
    job = chord(header)(merge_phase_chunks.s())

    # --- Step 2: One partial report per chunk, summed in pattern order ---
    report = reduce(SweepReport.merge, (_report_from_rows(code, rows) for rows in job.get()))
    logger.info(f"[{code.name}] phase sweep merged: {report.counts}")
    return report
