"""
Test that everything works
"""

import json
import os
import subprocess
import sys
import tempfile
import traceback
from collections.abc import Callable
from types import ModuleType

from . import (
    test_covering,
    test_equivalence,
    test_free,
    test_lipschitz,
    test_metric,
    test_suite,
)

failures = []


def lipfree(*args: str, stdin: str | None = None) -> subprocess.CompletedProcess[str]:
    return subprocess.run(
        ["python3", "-m", "lipfree", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )


def runTest(name: str, func: Callable[[], bool]) -> bool:
    pad = 80 - len(name) - 4
    print("%s> %s <%s" % ("=" * (pad // 2), name, "=" * (pad - pad // 2)))
    ok = False
    try:
        ok = func()
    except Exception:
        traceback.print_exc()
    if ok:
        print("SUCCESS")
        return True
    else:
        print("FAILURE")
        failures.append(name)
        return False


def runUnit(module: ModuleType) -> None:
    prefix = module.__name__.rsplit(".", 1)[-1][5:]
    for name, func in vars(module).items():
        if name.startswith("test_") and callable(func):
            runTest("%s %s" % (prefix, name[5:].replace("_", " ")), func)


def runNeg(name: str, base: str, bad: str, good: str) -> None:
    pad = 80 - len(name) - 4
    print("%s> %s <%s" % ("=" * (pad // 2), name, "=" * (pad - pad // 2)))
    slots = base.count("%s")
    with tempfile.NamedTemporaryFile(mode="w", encoding="utf-8", suffix=".json") as f:
        f.write(base % ((bad,) * slots))
        f.flush()
        code = subprocess.call(
            ["python3", "-m", "lipfree", "validate", f.name],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        if code == 0:
            print("FAILURE1")
            failures.append(name)
            return
    with tempfile.NamedTemporaryFile(mode="w", encoding="utf-8", suffix=".json") as f:
        f.write(base % ((good,) * slots))
        f.flush()
        code = subprocess.call(
            ["python3", "-m", "lipfree", "validate", f.name], stdout=subprocess.DEVNULL
        )
        if code != 0:
            print("FAILURE2")
            failures.append(name)
            return
    print("SUCCESS")


def expect(res: subprocess.CompletedProcess[str], code: int) -> bool:
    if res.returncode == code:
        return True
    print("Error expected exit code %d found %d" % (code, res.returncode), file=sys.stderr)
    sys.stderr.write(res.stderr)
    return False


def runValidate() -> bool:
    if not expect(lipfree("validate", "test/data/line3.json"), 0):
        return False
    res = lipfree("validate", "test/data/triangle.json")
    if not expect(res, 1):
        return False
    report = json.loads(res.stdout)
    if report["violations"] != ["triangle(e,2 via 1)"] or report["valid"]:
        return False
    if "triangle(e,2 via 1)" not in res.stderr:
        return False
    with open("test/data/line3.json") as f:
        if not expect(lipfree("validate", "-", stdin=f.read()), 0):
            return False
    return expect(lipfree("validate", "test/data/missing.json"), 2)


def runNorm() -> bool:
    res = lipfree("norm", "test/data/line3.json", "--coeffs", "1:1,2:-1")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if (report["dual"], report["flow"], report["agree"]) != (1, 1, True):
        return False
    if report["transport"] != [["1", "2", 1]]:
        return False
    res = lipfree("norm", "test/data/vector_line3.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if (report["vector"], report["dual"], report["flow"]) != ("1+2", 3, 3):
        return False
    if report["function"] != {"0": 0, "1": 1, "2": 2}:
        return False
    res = lipfree("norm", "test/data/line3.json", "--coeffs", "")
    if not expect(res, 0) or json.loads(res.stdout)["dual"] != 0:
        return False
    res = lipfree("norm", "test/data/line3.json", "--coeffs", "2:1/2", "--numeric", "float")
    if not expect(res, 0) or json.loads(res.stdout)["flow"] != 1.0:
        return False
    return expect(lipfree("norm", "test/data/line3.json", "--coeffs", "7:1"), 2)


def runQuotientGolden() -> bool:
    args = ["construct", "quotient", "test/data/line4.json", "--class", "0,1"]
    first = lipfree(*args)
    second = lipfree(*args)
    if not expect(first, 0):
        return False
    with open("test/golden/quotient_line4.json") as f:
        golden = json.load(f)
    if json.loads(first.stdout) != golden:
        print(first.stdout, file=sys.stderr)
        return False
    return first.stdout == second.stdout


def runPullback() -> bool:
    res = lipfree("norm", "test/data/vector_line3.json", "--certificate", "tmp/f.json")
    if not expect(res, 0):
        return False
    res = lipfree("witness", "pullback", "test/data/identity_line3.json", "--function", "tmp/f.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if report["function"]["values"] != [0, 1, 2]:
        return False
    if (report["lipschitz"], report["bound"]) != (1, 1):
        return False
    res = lipfree("witness", "pullback", "test/data/identity_line3.json", "--function", "tmp/missing.json")
    return expect(res, 2)


def runSumNormalize() -> bool:
    res = lipfree("construct", "sum", "test/data/pair2.json", "test/data/pair2.json")
    if not expect(res, 0):
        return False
    space = json.loads(res.stdout)["space"]
    if (space["points"], space["dist"][1][2]) != (["e", "x", "x'"], 4):
        return False
    res = lipfree("construct", "normalize", "test/data/pair2.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if report["basis"] != [{"x": "1/2"}] or report["space"]["points"] != ["e", "x/2"]:
        return False
    return expect(lipfree("construct", "quotient", "test/data/line4.json"), 2)


def runRetract() -> bool:
    res = lipfree("construct", "retract", "test/data/line3.json", "--map", "2:1", "-d", "tmp/retract")
    if not expect(res, 0):
        return False
    with open("tmp/retract/space.json") as f:
        if json.load(f)["points"] != ["0", "1", "[2]"]:
            return False
    res = lipfree("witness", "check", "tmp/retract/witness.json")
    if not expect(res, 0) or not json.loads(res.stdout)["valid"]:
        return False
    res = lipfree("construct", "retract", "test/data/line3.json", "--map", "1:2,2:1")
    return expect(res, 1)


def runProject() -> bool:
    res = lipfree("construct", "project", "test/data/project_line3.json", "--samples", "10")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if report["labels"] != ["1", "2-1"]:
        return False
    return report["bound_checks"] == {"samples": 10, "passed": 10}


def runDiscrete() -> bool:
    res = lipfree("construct", "discrete", "test/data/equilateral3.json", "-d", "tmp/discrete")
    if not expect(res, 0):
        return False
    res = lipfree("witness", "opnorm", "tmp/discrete/witness.json")
    if not expect(res, 0) or json.loads(res.stdout) != {"norm": 2}:
        return False
    res = lipfree("witness", "condition", "tmp/discrete/witness.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    return (report["norm"], report["inverse_norm"], report["condition"]) == (2, 1, 2)


def runWitnessCheck() -> bool:
    res = lipfree("witness", "check", "test/data/identity_line3.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if (report["valid"], report["condition"], report["support_matching"]) != (True, 1, True):
        return False
    res = lipfree("witness", "check", "test/data/flat_line3.json")
    if not expect(res, 1):
        return False
    if json.loads(res.stdout)["reason"] != "rank deficient: rank 1 < 2":
        return False
    res = lipfree("witness", "basis-constant", "test/data/project_line3.json")
    return expect(res, 0) and json.loads(res.stdout) == {"constant": 1}


def runSuite() -> bool:
    args = ["suite", "--sizes", "4", "--count", "5", "--seed", "7"]
    first = lipfree(*args)
    if not expect(first, 0) or not json.loads(first.stdout)["passed"]:
        return False
    if lipfree(*args).stdout != first.stdout:
        return False
    if lipfree(*args, "--jobs", "2").stdout != first.stdout:
        return False
    return expect(lipfree("suite", "--sizes", "0"), 0)


def runSuitePerturbed() -> bool:
    res = lipfree("suite", "--battery", "free", "--sizes", "4", "--count", "20", "--perturb")
    if not expect(res, 1):
        return False
    props = {p["name"]: p for p in json.loads(res.stdout)["batteries"]["free"]}
    dual = props["strong_duality"]
    return not dual["passed"] and dual["counterexample"] is not None


def runDoubling() -> bool:
    res = lipfree("doubling", "test/data/equilateral3.json", "--csv", "-")
    if not expect(res, 0):
        return False
    if res.stdout != "scale,count,exact\n1/2,3,yes\n1,1,yes\n":
        print(res.stdout, file=sys.stderr)
        return False
    res = lipfree("doubling", "test/data/line4.json")
    if not expect(res, 0):
        return False
    report = json.loads(res.stdout)
    if report["constant"] > 3 or not report["exact"]:
        return False
    if (report["theta"], report["diameter"], report["ratio"]) != (1, 3, 3):
        return False
    return expect(lipfree("doubling", "test/data/line4.json", "--scales", "0"), 2)


def runSample() -> bool:
    first = lipfree("sample", "-n", "5", "--seed", "3", "-o", "tmp/sample.json")
    if not expect(first, 0):
        return False
    with open("tmp/sample.json") as f:
        text = f.read()
    if lipfree("sample", "-n", "5", "--seed", "3").stdout != text:
        return False
    if not expect(lipfree("validate", "tmp/sample.json"), 0):
        return False
    res = lipfree("sample", "--projection", "-n", "4", "--seed", "3", "-o", "tmp/basis.json")
    if not expect(res, 0):
        return False
    if not expect(lipfree("construct", "project", "tmp/basis.json", "--samples", "5"), 0):
        return False
    return expect(lipfree("sample", "-n", "0"), 2)


def main():
    if not os.path.isdir("tmp"):
        os.mkdir("tmp")

    for module in (
        test_metric,
        test_lipschitz,
        test_free,
        test_equivalence,
        test_covering,
        test_suite,
    ):
        runUnit(module)

    space = '{"points": ["e", "a", %s], "base": 0, "dist": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}'
    runNeg("duplicate label", space, '"a"', '"b"')
    runNeg(
        "base out of range",
        '{"points": ["e", "a"], "base": %s, "dist": [[0, 1], [1, 0]]}',
        "2",
        "1",
    )
    dist = '{"points": ["e", "a", "b"], "base": 0, "dist": [[0, 1, 2], [1, 0, %s], [2, %s, 0]]}'
    for bad, good in (
        ("4", "1"),
        ("0", "1"),
        ("-1", "1"),
        ("1.5", '"3/2"'),
        ('"1/0"', '"1/1"'),
        ("true", "1"),
        ('"one"', "1"),
    ):
        runNeg("bad distance %s" % bad, dist, bad, good)
    runNeg(
        "asymmetric",
        '{"points": ["e", "a"], "base": 0, "dist": [[0, 1], [%s, 0]]}',
        "2",
        "1",
    )
    runNeg(
        "ragged rows",
        '{"points": ["e", "a"], "base": 0, "dist": [[0, 1], [1%s]]}',
        "",
        ", 0",
    )
    runNeg(
        "duplicate key",
        '{"points": ["e", "a"], "base": 0, %s "dist": [[0, 1], [1, 0]]}',
        '"base": 0,',
        "",
    )

    runTest("cli validate", runValidate)
    runTest("cli norm", runNorm)
    runTest("cli construct quotient golden", runQuotientGolden)
    runTest("cli construct sum normalize", runSumNormalize)
    runTest("cli construct retract", runRetract)
    runTest("cli construct project", runProject)
    runTest("cli construct discrete", runDiscrete)
    runTest("cli witness check", runWitnessCheck)
    runTest("cli witness pullback", runPullback)
    runTest("cli suite", runSuite)
    runTest("cli suite perturbed", runSuitePerturbed)
    runTest("cli doubling", runDoubling)
    runTest("cli sample", runSample)

    print("=" * 80)
    if not failures:
        print("ALL GOOD")
        sys.exit(0)
    else:
        for t in failures:
            print("%s failed" % t)
        sys.exit(1)


if __name__ == "__main__":
    main()
