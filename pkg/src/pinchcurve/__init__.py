"""Exact computations with almost homogeneous curves: stable subalgebras,
pinchings, Russell forms and (equivariant) Picard groups."""
from __future__ import annotations

__version__ = "0.1.0"
