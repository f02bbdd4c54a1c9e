"""Backend selection for the sparse kernels (compiled when importable)."""
from . import _sparse_py

try:
    from . import _sparse as _compiled
except ImportError:  # extension not built
    _compiled = None

NAME = "compiled" if _compiled is not None else "python"
impl = _compiled if _compiled is not None else _sparse_py


def available():
    return ("python", "compiled") if _compiled is not None else ("python",)


def use(name):
    """Switch the active backend (``"python"`` or ``"compiled"``)."""
    global impl, NAME
    if name == "python":
        impl = _sparse_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not built")
        impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    NAME = name
