"""
Rendering of verification reports, norm results and operator values as
JSON, CSV or plain text, and atomic output files.

A report is handled through its dictionary form (see
``VerificationReport.to_dict``), so a saved report can be rendered again
in another format without re-running the suite.
"""

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
import logging
import os
import tempfile
from enum import Enum
from typing import Dict, Optional

import pandas

from padicmax.bounds import RealBound
from padicmax.errors import ParseError

log = logging.getLogger(__name__)

CSV_COLUMNS = ["check", "verdict", "lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi",
               "constant"]


class OutputFormat(Enum):
    """Output formats of the command line tools"""

    JSON = "json"
    '''indented JSON with sorted keys'''
    CSV = "csv"
    '''one row per check'''
    TEXT = "text"
    '''human readable lines'''

    @classmethod
    def values(cls):
        return {f.value for f in cls}


def atomic_write(path: str, content: str):
    """
    Writes the content to a temporary file in the destination directory
    and renames it, so that the destination never holds partial output
    """

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-",
                               suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wt") as out:
            out.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    log.debug("Written {}".format(path))


def report_frame(report: Dict) -> pandas.DataFrame:
    """One row per check with the witness sides and the constant"""

    rows = []
    for record in report["records"]:
        witness = record.get("witness") or {}
        constant = record.get("constant")
        rows.append({
            "check": record["name"],
            "verdict": record["verdict"],
            "lhs_lo": witness.get("lhs_lo", ""),
            "lhs_hi": witness.get("lhs_hi", ""),
            "rhs_lo": witness.get("rhs_lo", ""),
            "rhs_hi": witness.get("rhs_hi", ""),
            "constant": constant["hi"] if constant else ""
        })
    return pandas.DataFrame(rows, columns=CSV_COLUMNS)


def _report_text(report: Dict) -> str:
    lines = []
    for record in report["records"]:
        line = "{:<32} {:<13} {:d}/{:d}".format(
            record["name"], record["verdict"], record["passed"],
            record["instances"]
        )
        if record.get("constant"):
            line += "  C ≤ {}".format(record["constant"]["hi"])
        lines.append(line)
        witness = record.get("witness")
        if witness and record["verdict"] != "pass":
            lines.append("    witness: {}".format(witness["instance"]))
    summary = report["summary"]
    lines.append("{}: {:d} passed, {:d} failed, {:d} inconclusive".format(
        report["status"], summary["pass"], summary["fail"],
        summary["inconclusive"]
    ))
    return "\n".join(lines) + "\n"


def render_report(report: Dict, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == OutputFormat.CSV:
        return report_frame(report).to_csv(index=False)
    return _report_text(report)


def load_report(path: str) -> Dict:
    """Reads a report saved in JSON format"""

    if not os.path.isfile(path):
        raise ParseError("Report {} not found".format(path))
    with open(path, "rt") as f:
        try:
            report = json.load(f)
        except json.JSONDecodeError as x:
            raise ParseError("{}: malformed report: {}".format(path, x))
    if not isinstance(report, dict) or "records" not in report:
        raise ParseError("{}: not a verification report".format(path))
    return report


def render_value(value: RealBound, fmt: OutputFormat,
                 description: Optional[Dict] = None) -> str:
    """An operator value as "lo hi" or as a document"""

    if fmt == OutputFormat.TEXT:
        return value.to_text() + "\n"
    lo, hi = value.to_text().split(' ')
    document = dict(description or {})
    document.update({"lo": lo, "hi": hi})
    if fmt == OutputFormat.JSON:
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    return pandas.DataFrame([document]).to_csv(index=False)


def render_norm(result, fmt: OutputFormat) -> str:
    """
    A :class:`padicmax.norms.NormResult`; the text form is "lo hi"
    followed by the witness ball of sup-type norms
    """

    document = result.to_dict()
    if fmt == OutputFormat.TEXT:
        text = result.value.to_text() + "\n"
        if document["witness"] is not None:
            text += "witness {}\n".format(document["witness"])
        return text
    if fmt == OutputFormat.JSON:
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    row = {k: v for k, v in document.items() if k != "params"}
    row.update(document["params"])
    return pandas.DataFrame([row]).to_csv(index=False)
