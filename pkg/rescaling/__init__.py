"""
Rescaling Toolkit - exact computations for rescaled graded algebras

Hilbert series, holonomy Lie algebras, Quillen models, Koszulness tests,
lower central series ranks, Campbell-Hausdorff calculus and the link /
arrangement front-ends built on them.
"""
__version__ = "1.0.0"
