"""
Construction of the annuli: parameter data, periods, the (y, z) dynamics,
the conformal factor, moving frames and the family solver.
"""
