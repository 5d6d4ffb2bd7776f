"""GPM - Geometric Preferential Attachment toolkit

Simulator and verification harness for geometric preferential attachment
graphs on the unit-area sphere.
"""

__version__ = "0.1.0"
__title__ = "gpm"
__author__ = "GPM Team"
__email__ = "alexei.veselov92@gmail.com"
