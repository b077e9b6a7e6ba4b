import os

TEMPLATES_DIR = os.path.join(os.path.dirname(__file__), "templates")
