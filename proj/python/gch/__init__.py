from ._gch import (
    ConfigError,
    ModelParams,
    Workspace,
    breaking_certificate,
    certify,
    config_reference,
    global_certificate,
    preset,
    presets,
    rotation_constants,
    simulate,
    verify,
    __version__,
)

__all__ = [
    "ConfigError",
    "ModelParams",
    "Workspace",
    "breaking_certificate",
    "certify",
    "config_reference",
    "global_certificate",
    "preset",
    "presets",
    "rotation_constants",
    "simulate",
    "verify",
]
