# -*- coding: utf-8 -*-

"""
"""

import json
import logging
from math import gcd


class InputError(ValueError):
    """
    Raised when input data violates a schema or an invariant

    :param message: the error message

    :param stage: the pipeline stage the error belongs to

    :param diagnostics: list of diagnostic strings

    """

    def __init__(self, message: str = "", stage: str = None, diagnostics: list = None):
        super().__init__(message)
        self.stage = stage
        self.diagnostics = diagnostics if diagnostics is not None else []


class BoundExhausted(RuntimeError):
    """
    Raised when a configurable safety bound is exceeded before a decision is made

    :param message: the error message

    :param stage: the pipeline stage the error belongs to

    :param bound: the name of the parameter that was exhausted

    """

    def __init__(self, message: str = "", stage: str = None, bound: str = None):
        super().__init__(message)
        self.stage = stage
        self.bound = bound


def lcm(a: int = 1, b: int = 1):
    """ """
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def solve_congruence(coef: int = 1, rhs: int = 0, modulus: int = 1):
    """
    Function to solve coef * n = rhs (mod modulus)

    Returns (n0, step) such that the solutions are n0 + step * k, or None

    """
    modulus = abs(modulus)
    g = gcd(coef, modulus)
    if rhs % g != 0:
        return None
    step = modulus // g
    if step == 1:
        return 0, 1
    n0 = ((rhs // g) * pow((coef // g) % step, -1, step)) % step
    return n0, step


def load_json(path: str = None):
    """
    Function to read a json document from file

    :param path: the file name

    """
    logging.debug(".. reading " + str(path))
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def dump_json(data: dict = None, path: str = None):
    """
    Function to serialize a report deterministically

    :param data: the (ordered) dictionary to be written

    :param path: the file name, if None the json string is returned

    """
    text = json.dumps(data, indent=2, ensure_ascii=False)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    return text
