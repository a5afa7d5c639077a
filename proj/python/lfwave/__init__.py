"""Tree-generated Riesz MRAs and biorthogonal wavelets on local fields.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. In an installed wheel the extension sits inside the package;
in a development checkout it is picked up from the CMake build directory
on sys.path.
"""

try:
    from lfwave._core import (
        Tree,
        Family,
        System,
        SchemaError,
        default_mask,
        elementary_from_tree,
        validate_elementary,
        __version__,
    )
except ImportError:  # development layout
    from _core import (
        Tree,
        Family,
        System,
        SchemaError,
        default_mask,
        elementary_from_tree,
        validate_elementary,
        __version__,
    )

__all__ = [
    "Tree",
    "Family",
    "System",
    "SchemaError",
    "default_mask",
    "elementary_from_tree",
    "validate_elementary",
    "__version__",
]
