"""
Интерфейс кодирования морфизмов.
"""

from abc import ABC, abstractmethod

from ..domain.models import Morphism


class MorphismCodec(ABC):
    """Абстрактный интерфейс для текстового представления морфизмов."""

    @abstractmethod
    def encode(self, m: Morphism) -> str:
        """
        Кодирует морфизм.

        Args:
            m: Морфизм в нормальной форме

        Returns:
            str: Текстовое представление
        """
        pass

    @abstractmethod
    def decode(self, text: str, p: int) -> Morphism:
        """
        Восстанавливает морфизм из текста.

        Args:
            text: Результат encode
            p: Простое

        Returns:
            Morphism: Морфизм

        Raises:
            ValueError: При неверном формате
        """
        pass
