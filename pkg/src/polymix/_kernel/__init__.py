"""Kernel selection: compiled extension if available, pure Python otherwise.

Set POLYMIX_PURE=1 to force the pure kernels even when the extension built.
Both implementations are deterministic and produce identical results; the
test suite checks them against each other when both are importable.
"""

import os

from polymix._kernel import pure

if os.environ.get("POLYMIX_PURE") == "1":
    impl = pure
else:
    try:
        from polymix._kernel import _speedups as impl  # type: ignore[no-redef]
    except ImportError:
        impl = pure

IMPLEMENTATION = impl.IMPLEMENTATION

coset_enumerate = impl.coset_enumerate
schreier_sims = impl.schreier_sims
sift = impl.sift
iter_chain_elements = impl.iter_chain_elements
intersection_filter = impl.intersection_filter
adjacency_table = impl.adjacency_table
component_labels = impl.component_labels
