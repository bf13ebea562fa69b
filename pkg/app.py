"""zeroone-lab entry point: ``python app.py <command> ...``.

Logging is configured by the CLI from LOG_CONSOLE_LEVEL, LOG_FILE_LEVEL and
LOG_FILE, read from the environment or a .env file.
"""

import os
import sys

from dotenv import load_dotenv

sys.path.append(os.path.join(os.path.dirname(__file__), "src"))

from src.backend.cli import main  # noqa: E402

load_dotenv()

if __name__ == "__main__":
    sys.exit(main())
