"""This file is used by Python Celery to launch the Celery application and register tasks."""
from celery import Celery
from celery.utils.log import get_task_logger

from .examples import get_suite


app = Celery('tasks', broker='pyamqp://guest@localhost//', backend='rpc://')
logger = get_task_logger(__name__)


@app.task
def run_suite(name, params):
    """Run one example suite on a worker.

    Args:
        name: suite name
        params: parameter overrides, values as strings or numbers

    Returns:
        the report as a JSON-compatible dict
    """
    suite = get_suite(name)
    logger.info('Running suite %s with %s', name, params)
    report = suite.run(params)
    logger.info('Suite %s: %s', name, 'pass' if report.passed else 'FAIL')
    return report.to_dict()
