import os
from argparse import ArgumentTypeError

from banachlab.config import Caps
from banachlab.errors import MalformedInputError
from banachlab.hamming import KSubset
from banachlab.vectors import SparseVec


def file(value):
    if not os.path.isfile(value):
        raise ArgumentTypeError("Must be an existing file")
    return value


def vector(value):
    try:
        return SparseVec.parse(value)
    except MalformedInputError as e:
        raise ArgumentTypeError(f"invalid vector '{value}': {e}") from e


def ksubset(value):
    try:
        return KSubset.parse(value)
    except MalformedInputError as e:
        raise ArgumentTypeError(f"invalid k-subset '{value}': {e}") from e


def caps(value):
    try:
        return Caps.parse_assignments(value)
    except MalformedInputError as e:
        raise ArgumentTypeError(str(e)) from e


def positive_int(value):
    try:
        number = int(value)
    except ValueError as e:
        raise ArgumentTypeError(f"'{value}' is not an integer") from e
    if number < 1:
        raise ArgumentTypeError(f"Must be positive, got {number}")
    return number


def non_negative_int(value):
    try:
        number = int(value)
    except ValueError as e:
        raise ArgumentTypeError(f"'{value}' is not an integer") from e
    if number < 0:
        raise ArgumentTypeError(f"Must not be negative, got {number}")
    return number


def int_list(value):
    try:
        return [int(term) for term in value.split(",") if term.strip() != ""]
    except ValueError as e:
        raise ArgumentTypeError(f"'{value}' is not a comma-separated list of integers") from e
