"""Allow running as: python -m chaoskit"""

from .cli import main

main()
