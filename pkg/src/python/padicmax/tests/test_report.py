#  Copyright (c) 2021. Harvard University
#
#  Developed by Research Software Engineering,
#  Faculty of Arts and Sciences, Research Computing (FAS RC)
#  Author: Michael A Bouzinier
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#


import json
from fractions import Fraction

import pytest

from padicmax.bounds import RealBound
from padicmax.errors import ParseError
from padicmax.norms import bmo_norm
from padicmax.report import OutputFormat, CSV_COLUMNS, atomic_write, \
    report_frame, render_report, load_report, render_value, render_norm


@pytest.fixture
def document():
    return {
        "records": [
            {"name": "sandwich", "verdict": "pass", "passed": 3,
             "instances": 3, "witness": None,
             "constant": {"lo": "1/2", "hi": "3/4"}},
            {"name": "planted_violation", "verdict": "fail", "passed": 0,
             "instances": 1,
             "witness": {"instance": "b0", "lhs_lo": "1/2", "lhs_hi": "1/2",
                         "rhs_lo": "1/4", "rhs_hi": "1/4"},
             "constant": None},
        ],
        "summary": {"pass": 1, "fail": 1, "inconclusive": 0, "checks": 2},
        "status": "fail"
    }


def test_output_formats():
    assert OutputFormat.values() == {"json", "csv", "text"}


def test_atomic_write(tmp_path):
    path = tmp_path / "out" / "result.txt"
    atomic_write(str(path), "first\n")
    atomic_write(str(path), "second\n")
    assert path.read_text() == "second\n"
    assert [p.name for p in path.parent.iterdir()] == ["result.txt"]


def test_frame(document):
    frame = report_frame(document)
    assert list(frame.columns) == CSV_COLUMNS
    assert list(frame["check"]) == ["sandwich", "planted_violation"]
    assert list(frame["constant"]) == ["3/4", ""]
    assert list(frame["rhs_lo"]) == ["", "1/4"]


def test_render_text(document):
    text = render_report(document, OutputFormat.TEXT)
    lines = text.splitlines()
    assert lines[0].startswith("sandwich")
    assert lines[0].endswith("3/3  C ≤ 3/4")
    assert lines[2] == "    witness: b0"
    assert lines[-1] == "fail: 1 passed, 1 failed, 0 inconclusive"


def test_render_json_and_csv(document):
    assert json.loads(render_report(document, OutputFormat.JSON)) == document
    csv = render_report(document, OutputFormat.CSV)
    assert csv.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert len(csv.splitlines()) == 3


def test_load_report(document, tmp_path):
    path = tmp_path / "report.json"
    path.write_text(render_report(document, OutputFormat.JSON))
    assert load_report(str(path)) == document


@pytest.mark.parametrize("content", ["{", "[1, 2]", '{"status": "pass"}'])
def test_load_report_rejects(tmp_path, content):
    path = tmp_path / "report.json"
    path.write_text(content)
    with pytest.raises(ParseError):
        load_report(str(path))
    with pytest.raises(ParseError):
        load_report(str(tmp_path / "absent.json"))


def test_render_value():
    value = RealBound.of(Fraction(1, 4))
    assert render_value(value, OutputFormat.TEXT) == "1/4 1/4\n"
    document = json.loads(render_value(value, OutputFormat.JSON,
                                       {"operator": "M"}))
    assert document == {"operator": "M", "lo": "1/4", "hi": "1/4"}
    assert render_value(value, OutputFormat.CSV).splitlines()[0] == "lo,hi"


def test_render_norm(chi_z2):
    result = bmo_norm(chi_z2)
    assert render_norm(result, OutputFormat.TEXT) == \
        "1/2 1/2\nwitness 2^1:1:\n"
    assert json.loads(render_norm(result, OutputFormat.JSON))["witness"] \
        == "2^1:1:"
    header = render_norm(result, OutputFormat.CSV).splitlines()[0]
    assert "params" not in header.split(",")
