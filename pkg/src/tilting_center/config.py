"""
Конфигурация движка.
Загружает переменные окружения из .env файла.
"""

import os

from dotenv import load_dotenv

# Загружаем переменные окружения
load_dotenv()


def parse_bool(value: str | None) -> bool:
    """
    Парсит значение в булевый флаг.

    True для (case-insensitive): "1", "true", "yes", "y", "on"
    False для: пусто/не задано, "0", "false", "no", "off"
    """
    if not value:
        return False
    normalized = value.strip().lower()
    return normalized in ("1", "true", "yes", "y", "on")


def parse_int(name: str, default: int) -> int:
    """
    Читает целое число из окружения.

    Args:
        name: Имя переменной окружения
        default: Значение по умолчанию

    Returns:
        int: Значение переменной

    Raises:
        ValueError: Если значение не является целым числом
    """
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.strip())
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


# Максимальный размер таблицы мемоизации нормальных форм
MEMO_LIMIT = parse_int("TILTING_MEMO_LIMIT", 200000)

# Лимит применений правил на одну нормализацию
STEP_BUDGET = parse_int("TILTING_STEP_BUDGET", 1000000)

# Уровень логирования для скриптов и CLI
LOG_LEVEL = os.getenv("TILTING_LOG_LEVEL", "INFO").upper()

# Показывать веса v-1 вместо вершин v
DISPLAY_WEIGHTS = parse_bool(os.getenv("TILTING_DISPLAY_WEIGHTS"))

# Простое поле для квантового варианта (k может быть составным)
QUANTUM_PRIME = parse_int("TILTING_QUANTUM_PRIME", 10007)
