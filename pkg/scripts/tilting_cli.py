#!/usr/bin/env python3
"""
Запуск CLI алгебры Z из корня проекта.

Пример: python scripts/tilting_cli.py digits 17 -p 3
"""

import sys
from pathlib import Path

# Добавляем корень проекта в sys.path для импортов
script_dir = Path(__file__).parent
project_root = script_dir.parent
sys.path.insert(0, str(project_root))

from src.tilting_center.app.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
