"""
Тесты алгебры Z и ее центра.
"""
