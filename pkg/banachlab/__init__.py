import re

VECTOR_TERM = re.compile(r"^\s*(\d+(?:\.\d+)*)\s*:\s*([+-]?\d+(?:/\d+)?)\s*$")
RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")
CAP_ASSIGNMENT = re.compile(r"^\s*([a-z_]+)\s*=\s*(\d+)\s*$")
EMBEDDING_PARAMETER = re.compile(r"^\s*([a-z]+)\s*=\s*(\S.*?)\s*$")

CAPS_ENVIRONMENT_VARIABLE = "BANACHLAB_CAPS"
