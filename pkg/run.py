import sys
from pathlib import Path

# Add the project root directory to Python path
sys.path.append(str(Path(__file__).resolve().parent))

from src.cli.commands import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
