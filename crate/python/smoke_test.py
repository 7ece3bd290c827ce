"""Smoke test for the nwvoa_py extension.

Build first:  cargo build --release -p nwvoa-py --features extension-module
Then run:     python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libnwvoa_py.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp()) / "nwvoa_py.so"
            shutil.copy(lib, tmp)
            spec = importlib.util.spec_from_file_location("nwvoa_py", tmp)
            mod = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(mod)
            return mod
    sys.exit("libnwvoa_py.so not found; build the nwvoa-py crate first")


def main():
    nw = load()
    assert nw.schema_id() == "nwvoa.report/v1"
    assert "kernel-profile" in nw.suite_names()

    irreducible, case, label, _ = nw.classify("3", "2", "1/3")
    assert irreducible and case == 1, label

    # F(0) Z_1 = 0 when y/(x-1) - lambda = 1
    assert nw.top_action("3", "2", "0", 1, "F", 1) == (0, "0")
    assert nw.top_action("2", "1", "1/2", 1, "E", 0) == (1, "1")

    rows = nw.kernel_profile(2, 1)
    assert any(r[:2] == (2, 0) and r[5] == 6 for r in rows), rows

    ok, text = nw.run_suite("classify")
    report = json.loads(text)
    assert ok and report and all(r["schema"] == "nwvoa.report/v1" for r in report)
    assert text == json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)

    try:
        nw.run_suite("classify", params=["x=1/0"])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid parameter accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
