"""cjlab: finite-model workbench for dyadic deontic logic, choice-function
algebra, and ranked preferential semantics."""

from . import (cjmodel, choice, consequence, kernel, modal, prefstruct,
               represent, syntax)
from .kernel import active_backend

__version__ = "0.1.0"
__all__ = ["cjmodel", "choice", "consequence", "kernel", "modal",
           "prefstruct", "represent", "syntax", "active_backend",
           "__version__"]
