"""Golden CLI cases shared by the test and the regeneration script."""

from importlib.resources import files

DATA = files("tqft2d") / "data"
ALGEBRAS = ["pos1", "neg1", "z2"]
COMMANDS = {
    "check": [],
    "hermitian": [],
    "classify": [],
    "eval": ["-e", "comul ; mul"],
    "surface": ["-g", "2"],
    "adjoint": ["-e", "mul"],
}
FLAGS = ["--json", "--seed", "0", "--tol", "1e-9"]


def argv(algebra, command):
    return [*FLAGS, command, str(DATA / f"{algebra}.json"), *COMMANDS[command]]


def golden_name(algebra, command):
    return f"{algebra}__{command}.json"
