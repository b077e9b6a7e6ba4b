from abc import ABC
from typing import Any, Callable, Dict, Iterator, Tuple


class TemplaterExtension(ABC):

    def __init__(self, **variables):
        self.__variables = variables
        super().__init__()

    @property
    def filters(self) -> Iterator[Tuple[str, Callable]]:
        yield from ()

    @property
    def args(self) -> Dict[str, Any]:
        return dict(self.__variables)

    def option(self, name: str, default: Any = None) -> Any:
        return self.__variables.get(name, default)
