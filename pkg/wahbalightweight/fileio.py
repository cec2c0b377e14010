"""
On-disk formats.

Observation file (JSON)::

    {"pairs": [{"body": [x, y, z], "reference": [x, y, z], "weight": w}, ...]}

Trace file (CSV), one row per iteration record, floats with 17
significant digits::

    iter,loss,grad_norm,q0,q1,q2,q3,min_eig
"""

import csv
import io
import os
from typing import Any, Iterable, List

from .compat import JSONDecodeError, dumps, loads
from .exceptions import InputFileError, ObservationError
from .resources import BaseResource, IterationRecord, ObservationSet
from .utils import format_float

TRACE_HEADER = ["iter", "loss", "grad_norm", "q0", "q1", "q2", "q3", "min_eig"]
SWEEP_HEADER = ["norm", "min_eig", "max_eig", "class"]


def read_json(path: str) -> Any:
    """
    :raises: InputFileError with the line number of a JSON syntax error
    """
    try:
        with open(path, "rb") as f:
            content = f.read()
    except OSError as e:
        raise InputFileError(path, "cannot read file: %s" % e.strerror)
    try:
        return loads(content)
    except JSONDecodeError as e:
        lineno = getattr(e, "lineno", None)
        raise InputFileError(path, "malformed JSON: %s" % e.msg, lineno)
    except ValueError as e:
        raise InputFileError(path, "malformed JSON: %s" % e)


def read_observation_file(path: str) -> ObservationSet:
    """
    :raises: InputFileError if unreadable, malformed or not a valid set
    """
    data = read_json(path)
    if not isinstance(data, dict) or set(data) != {"pairs"}:
        raise InputFileError(path, "expected an object with a single 'pairs' list")
    try:
        return ObservationSet(pairs=data["pairs"])
    except ObservationError as e:
        raise InputFileError(path, str(e))


def dumps_resource(resource: BaseResource) -> str:
    return resource.json() + "\n"


def write_text(path: str, content: str) -> None:
    """
    :raises: InputFileError if the path is not writable
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
    except OSError as e:
        raise InputFileError(path, "cannot write file: %s" % e.strerror)


def write_json(path: str, data: Any) -> None:
    write_text(path, dumps(data) + "\n")


def write_observation_file(path: str, observations: ObservationSet) -> None:
    write_text(path, dumps_resource(observations))


def sidecar_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return "%s.meta%s" % (root, ext or ".json")


def trace_rows(trace: Iterable[IterationRecord]) -> List[List[str]]:
    rows = []
    for record in trace:
        min_eig = record.min_hessian_eig
        rows.append(
            [str(record.index), format_float(record.loss), format_float(record.grad_norm)]
            + [format_float(value) for value in record.q]
            + ["" if min_eig is None else format_float(min_eig)]
        )
    return rows


def format_csv(header: List[str], rows: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_trace_file(path: str, trace: Iterable[IterationRecord]) -> None:
    write_text(path, format_csv(TRACE_HEADER, trace_rows(trace)))
