from .presentation import Presentation, apply_interpretation, decide, parse
