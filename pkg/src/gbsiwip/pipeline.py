# -*- coding: utf-8 -*-

"""
"""

import logging
import time
from collections import OrderedDict, namedtuple

import pandas as pd

from .const import (
    MAX_L,
    MAX_ROUNDS,
    MODE_ALL,
    MODE_ATOROIDAL,
    MODE_IWIP,
    MODE_VALIDATE,
    MODES,
    SCHEMA_VERSION,
    STAGE_ATOROIDAL,
    STAGE_COLLAPSE,
    STAGE_INPUT,
    STAGE_IWIP,
    STAGE_PINPS,
    STAGE_VALIDATE,
    STAGE_VERIFY,
)
from .graphs import GraphOfGroups
from .lamination import decide_fully_irreducible
from .nielsen import PinpFinder
from .pseudoperiodic import (
    bounded_growth,
    common_period,
    decide_pseudo_atoroidal,
    has_periodic_growth,
    nielsen_class_to_dict,
)
from .traintrack import (
    ReducibilityCertificate,
    TrainTrackMap,
    certificate_to_dict,
    collapse_to_irreducible,
    recheck_certificate,
    transition_matrix,
)
from .utils import InputError, load_json

default_witness_iterations = 6

JobSpec = namedtuple(
    "JobSpec", ["graph", "map", "family", "mode", "params", "recheck", "override"]
)
JobSpec.__doc__ = """A decision job"""
JobSpec.graph.__doc__ = "Path of the graph file, or the graph dict"
JobSpec.map.__doc__ = "Path of the map file, or the map dict (None in validate mode)"
JobSpec.family.__doc__ = "Path of the family file, the family dict, or None"
JobSpec.mode.__doc__ = "One of validate, atoroidal, iwip or all"
JobSpec.params.__doc__ = "Dictionary with parameters (max_l, max_rounds, ...)"
JobSpec.recheck.__doc__ = "Re-verify every witness and certificate"
JobSpec.override.__doc__ = "Decide full irreducibility without a pseudo-atoroidal verdict"
JobSpec.__new__.__defaults__ = (None, None, None, MODE_ALL, {}, False, False)


def _load(source=None, stage: str = STAGE_INPUT):
    """Returns the dict of a json file or the dict itself, checking the schema version"""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = load_json(source)
        except (OSError, ValueError) as err:
            raise InputError("cannot read " + str(source), stage=stage, diagnostics=[str(err)])
    if not isinstance(data, dict):
        raise InputError("expected a json object", stage=stage)
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InputError(
            "unsupported schema version " + str(version),
            stage=stage,
            diagnostics=["expected " + SCHEMA_VERSION],
        )
    return data


def check_job(job: JobSpec = None) -> None:
    """Raises an InputError for malformed jobs"""
    if job.mode not in MODES:
        raise InputError("unknown mode " + repr(job.mode), stage=STAGE_INPUT)
    for key in (MAX_L, MAX_ROUNDS):
        if key in job.params and job.params[key] < 1:
            raise InputError(key + " should be positive", stage=STAGE_INPUT)
    if job.mode != MODE_VALIDATE and job.map is None:
        raise InputError("a map is needed in mode " + job.mode, stage=STAGE_INPUT)


class _Stages:
    """Keeps the status and timing of the stages of a report"""

    def __init__(self, report: OrderedDict = None) -> None:
        self.report = report
        self.started = None

    def start(self, stage: str = None) -> None:
        logging.info("stage " + stage)
        self.started = time.perf_counter()

    def done(self, stage: str = None, status: str = "ok") -> None:
        self.report["stages"][stage] = status
        self.report["timing"][stage] = round(time.perf_counter() - self.started, 6)


def run(job: JobSpec = None):
    """
    Runs the stages of a job and returns the report as ordered dict

    """
    from . import __version__

    check_job(job)
    report = OrderedDict()
    report["schema_version"] = SCHEMA_VERSION
    report["tool_version"] = __version__
    report["mode"] = job.mode
    report["stages"] = OrderedDict()
    report["verdicts"] = OrderedDict()
    report["certificates"] = []
    report["timing"] = OrderedDict()
    stages = _Stages(report)
    params = dict(job.params)

    stages.start(STAGE_INPUT)
    try:
        graph = GraphOfGroups.from_dict(_load(job.graph))
    except (ValueError, TypeError) as err:
        if isinstance(err, InputError):
            raise
        raise InputError("malformed graph", stage=STAGE_INPUT, diagnostics=[str(err)])
    family = None
    if job.family is not None:
        family = _load(job.family).get("family", None)
        if not isinstance(family, dict):
            raise InputError("family data should have 'family'", stage=STAGE_INPUT)
    stages.done(STAGE_INPUT)

    stages.start(STAGE_VALIDATE)
    ok, diagnostics = graph.validate()
    if not ok:
        raise InputError("invalid graph of groups", stage=STAGE_VALIDATE, diagnostics=diagnostics)
    stages.done(STAGE_VALIDATE)
    if job.mode == MODE_VALIDATE:
        return report

    stages.start(STAGE_VERIFY)
    try:
        f = TrainTrackMap.from_dict(graph, _load(job.map), params=params)
    except InputError:
        raise
    except (ValueError, TypeError) as err:
        raise InputError("malformed map", stage=STAGE_INPUT, diagnostics=[str(err)])
    ok, counterexample = f.verify()
    if not ok:
        raise InputError(
            "not a train track map", stage=STAGE_VERIFY, diagnostics=[str(counterexample)]
        )
    stages.done(STAGE_VERIFY)

    stages.start(STAGE_COLLAPSE)
    result = collapse_to_irreducible(f)
    if isinstance(result, ReducibilityCertificate):
        stages.done(STAGE_COLLAPSE, "reducible")
        report["verdicts"]["reducible"] = True
        certificate = certificate_to_dict(result)
        if job.recheck:
            certificate["rechecked"] = recheck_certificate(result)
        report["certificates"].append(certificate)
        return report
    primitive = result.map
    report["verdicts"]["primitive_edges"] = primitive.graph.chosen_edges
    report["verdicts"]["transition_matrix"] = transition_matrix(primitive).tolist()
    stages.done(STAGE_COLLAPSE)

    atoroidal = None
    if job.mode in (MODE_ATOROIDAL, MODE_ALL) or (job.mode == MODE_IWIP and not job.override):
        stages.start(STAGE_PINPS)
        atoroidal = decide_pseudo_atoroidal(primitive, params)
        stages.done(STAGE_PINPS)
        stages.start(STAGE_ATOROIDAL)
        report["verdicts"]["atoroidal"] = atoroidal.atoroidal
        report["certificates"].append(_atoroidal_certificate(atoroidal, job.recheck, params))
        stages.done(STAGE_ATOROIDAL)

    if job.mode in (MODE_IWIP, MODE_ALL):
        stages.start(STAGE_IWIP)
        if job.override or atoroidal.atoroidal:
            verdict = decide_fully_irreducible(
                primitive, family=family, atoroidal=atoroidal, override=job.override, params=params
            )
            report["verdicts"]["fully_irreducible"] = verdict.fully_irreducible
            report["certificates"].append(_irreducibility_certificate(verdict))
            stages.done(STAGE_IWIP)
        else:
            stages.done(STAGE_IWIP, "skipped")
    return report


def _atoroidal_certificate(verdict=None, recheck: bool = False, params: dict = {}):
    f = verdict.map
    finder = PinpFinder(f, params)
    data = OrderedDict()
    data["kind"] = "atoroidal"
    data["pinps"] = [finder.pinp_to_dict(p) for p in verdict.pinps]
    data["classes"] = [
        nielsen_class_to_dict(f, nielsen, elliptic, witness)
        for nielsen, elliptic, witness in verdict.classes
    ]
    if verdict.witness is not None:
        data["witness"] = f.graph.to_text(verdict.witness)
    if recheck:
        data["pinps_rechecked"] = all(finder.pinp_identity(p) for p in verdict.pinps)
        if verdict.witness is not None:
            period = common_period(verdict.pinps)
            n = max(default_witness_iterations, 2 * period)
            lengths = bounded_growth(f, verdict.witness, n)
            data["witness_period"] = period
            data["witness_lengths"] = lengths
            data["witness_rechecked"] = has_periodic_growth(lengths, period)
    return data


def _irreducibility_certificate(verdict=None):
    data = OrderedDict()
    data["kind"] = "whitehead"
    data["vertices"] = OrderedDict(
        (
            v,
            OrderedDict(
                [
                    ("components", [[list(d) for d in c.component] for c in components]),
                    ("indices", [c.index for c in components]),
                    ("connected", len(components) == 1),
                ]
            ),
        )
        for v, components in verdict.components.items()
    )
    if verdict.certificate is not None:
        data["reducing_vertex"] = verdict.certificate["vertex"]
    return data


def explain(report: OrderedDict = None):
    """
    Renders a report as human readable text

    """
    lines = ["mode: " + report["mode"]]
    stages = pd.DataFrame(
        {
            "status": pd.Series(report["stages"]),
            "seconds": pd.Series(report["timing"]),
        }
    )
    lines.append(stages.to_string())
    verdicts = report["verdicts"]
    if verdicts.get("reducible", False):
        for certificate in report["certificates"]:
            lines.append(
                "reducible, "
                + certificate["kind"]
                + " certificate on edges "
                + ", ".join(certificate["edges"])
            )
    if "atoroidal" in verdicts:
        certificate = [c for c in report["certificates"] if c["kind"] == "atoroidal"][0]
        if len(certificate["pinps"]) == 0:
            lines.append("pseudo-atoroidal: no pINPs")
        else:
            frame = pd.DataFrame(certificate["classes"])
            lines.append("pseudo-atoroidal: " + str(verdicts["atoroidal"]))
            lines.append(frame[["generators", "elliptic"]].to_string())
    if "fully_irreducible" in verdicts:
        certificate = [c for c in report["certificates"] if c["kind"] == "whitehead"][0]
        frame = pd.DataFrame(
            [
                {"vertex": v, "components": len(data["components"]), "connected": data["connected"]}
                for v, data in certificate["vertices"].items()
            ]
        )
        lines.append("fully irreducible: " + str(verdicts["fully_irreducible"]))
        lines.append(frame.to_string(index=False))
    return "\n".join(lines)
