"""
loopframe
Famílias de imersões de curvatura constante via grupos de laços
"""
import os
import sys

# Adiciona o diretório raiz ao path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from modules.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
