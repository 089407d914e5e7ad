import subprocess as sp
import sys
from pathlib import Path

from fabric import task
from invoke import Context


@task
def verify(c: Context, suite: str = "", out: str = "verify-report.json"):
    """
    Run the verification suites and write the JSON report
    """
    suites = " ".join(f"--suite {s}" for s in suite.split(",") if s)
    sp.check_call(
        f"export PYTHONPATH=`fab pypath` ;uv run tomostar verify {suites} --out {out}",
        cwd=Path(__file__).parent,
        shell=True,
    )


@task
def test(c: Context, slow: bool = False):
    """
    Run the test suite; slow quadrature tests only with --slow
    """
    marker = "" if slow else "-m 'not slow'"
    sp.check_call(
        f"export PYTHONPATH=`fab pypath` ;uv run pytest {marker}",
        cwd=Path(__file__).parent,
        shell=True,
    )


@task
def pypath(c: Context):
    code_root = Path(__file__).parent
    ans = [
        code_root,
        *sys.path,
    ]
    ans = [Path(i).absolute().__str__() for i in ans]
    a = []
    for i in ans:
        if i not in a:
            a.append(i)
    print(":".join(a))
