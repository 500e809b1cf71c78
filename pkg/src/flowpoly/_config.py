import os

DEFAULT_ENUM_CAP = 10**7
DEFAULT_ORDER_BRUTE_FORCE_CAP = 10


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name}={raw!r} is not an integer")
    if value < 1:
        raise ValueError(f"environment variable {name} must be positive, got {value}")
    return value


def enum_cap() -> int:
    return _env_int("FLOWPOLY_ENUM_CAP", DEFAULT_ENUM_CAP)


def thread_count() -> int:
    return _env_int("FLOWPOLY_THREADS", os.cpu_count() or 1)
