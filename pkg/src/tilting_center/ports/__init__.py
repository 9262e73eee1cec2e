"""Абстрактные интерфейсы экспорта и кодирования."""
