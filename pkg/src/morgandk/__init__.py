"""morgandk: a lambda-Pi-modulo-rewriting kernel with a two-level type
theory corpus, a cubical fragment, De Morgan algebra oracles, and a
critical-pair analyzer."""

__version__ = "0.1.0"
