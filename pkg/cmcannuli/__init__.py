"""
Free boundary constant mean curvature annuli in the unit ball.
"""

__version__ = "0.1.0"
