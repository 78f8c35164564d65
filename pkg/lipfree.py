#!/usr/bin/env python3
import sys
import os

sys.path.append(os.path.dirname(__file__))
from lipfree.__main__ import main

main()
