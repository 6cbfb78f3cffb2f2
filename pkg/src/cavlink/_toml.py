"""TOML reader shim (stdlib ``tomllib`` on 3.11+, ``tomli`` otherwise)."""
try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python < 3.11
    import tomli as tomllib

loads = tomllib.loads
load = tomllib.load
TOMLDecodeError = tomllib.TOMLDecodeError
