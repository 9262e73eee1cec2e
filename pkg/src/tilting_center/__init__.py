"""
sl2-tilting-center: вычислительный движок для колчанной алгебры категории
тилтинг-модулей SL2 в характеристике p.
"""

__version__ = "0.1.0"
