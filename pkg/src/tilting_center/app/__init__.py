"""Сервисы проверки и командная строка."""
