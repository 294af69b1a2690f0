from .app import app, run_method

__all__ = ["app", "run_method"]
