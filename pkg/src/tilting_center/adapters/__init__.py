"""Реализации портов."""
