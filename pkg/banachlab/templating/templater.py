from io import StringIO

import jinja2

from banachlab.templating import TEMPLATES_DIR
from banachlab.templating.templater_extension import TemplaterExtension


class Templater:
    def __init__(self, templates_dir=TEMPLATES_DIR, **template_args):
        self.templates_dir = templates_dir
        self.__template_environment = jinja2.Environment(
            loader=jinja2.FileSystemLoader(searchpath=templates_dir),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.__template_args = template_args

    def extend(self, extension: TemplaterExtension):
        for name, method in extension.filters:
            self.__template_environment.filters[name] = method
        self.__template_args.update(extension.args)
        return self

    def template(self, template: str, **args) -> str:
        if not template:
            raise ValueError("template should not be empty")
        template_vars = dict(args)
        template_vars.update(self.__template_args)
        stream = StringIO()
        self.__template_environment.get_template(template).stream(template_vars).dump(stream)
        return stream.getvalue()
