from fractions import Fraction
from typing import Callable, Iterator, Optional, Tuple

from banachlab import RATIONAL
from banachlab.templating.templater_extension import TemplaterExtension
from banachlab.version import __version__


class ReportMarkdownExtension(TemplaterExtension):
    def __init__(self, decimal: Optional[int] = None):
        super().__init__(decimal=decimal, generator=f"banachlab {__version__}")

    @property
    def filters(self) -> Iterator[Tuple[str, Callable]]:
        yield "table_safe", self.table_safe
        yield "eclipse", self.eclipse
        yield "code", self.code
        yield "verdict", self.verdict
        yield "number", self.number

    def table_safe(self, text):
        return str(text).replace("|", "\\|").replace("\n", " ")

    def eclipse(self, value, length=48):
        value = str(value)
        if len(value) > length:
            return value[: length - 3] + "..."
        return value

    def code(self, value):
        return f"`{value}`"

    def verdict(self, value):
        if value is True:
            return "pass"
        if value is False:
            return "FAIL"
        return str(value)

    def number(self, value):
        decimal = self.option("decimal")
        if decimal is None or not isinstance(value, str) or not RATIONAL.match(value):
            return value
        return f"{value} ~ {float(Fraction(value.strip())):.{decimal}f}"
