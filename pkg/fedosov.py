#!/usr/bin/env python3
"""Entry point for the ``fedosov`` command line.

    fedosov star --chart charts/flat2d.json "x1" "x2"
    fedosov verify --chart charts/g111.json --check-mode full

Optional env-vars: FEDOSOV_N_WORK, FEDOSOV_H_ORDER, FEDOSOV_LOG_LEVEL,
FEDOSOV_CHECK_MODE, FEDOSOV_SEED
"""

from chart_io.cli import main

if __name__ == "__main__":
    main()
