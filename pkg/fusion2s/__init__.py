"""fusion2s: 2-categorical S-matrices of pointed braided fusion categories"""

__version__ = "0.1.0"
