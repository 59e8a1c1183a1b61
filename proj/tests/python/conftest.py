import json
import os
import shutil
import subprocess

import pytest

TIE = {"n": 2, "m": 1, "valuations": [["2"], ["1"]], "budgets": ["1/2", "10"]}
TWO_TYPES = {"n": 2, "m": 4, "valuations": [[2, 2, 1, 1], [1, 1, 3, 3]], "budgets": [1, 2]}


@pytest.fixture
def cli():
    path = os.environ.get("SPPE_CLI") or shutil.which("sppe")
    if not path:
        pytest.skip("sppe executable not available")

    def run(*args, stdin=None):
        proc = subprocess.run([path, *map(str, args)], input=stdin, capture_output=True, text=True)
        return proc.returncode, proc.stdout

    return run


@pytest.fixture
def write_json(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write
