"""
rlab: spectra of simplicial complexes, building quotients and Ramanujan verdicts.
"""
__version__ = "0.1.0"
