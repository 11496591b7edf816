from .app import create_app
from .backends import ClipBackend, ToyAlignedBackend

__all__ = ["ClipBackend", "ToyAlignedBackend", "create_app"]
