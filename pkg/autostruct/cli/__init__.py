from .cli import run, main
