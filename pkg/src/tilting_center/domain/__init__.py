"""Доменный слой: p-адическая комбинаторика, переписывание слов, центр."""
