#!/usr/bin/env python3
"""Deterministic stand-in for the execution harness.

Speaks the child-process protocol (request JSON on stdin, result JSON on
stdout) and picks its verdict from marker calls in the submitted code, so
pipeline tests can exercise every outcome category without a real runner.
"""

import json
import sys
import time


def main() -> int:
    request = json.load(sys.stdin)
    code = request.get("code", "")
    if "trigger_crash" in code:
        print("stub harness crashing on purpose", file=sys.stderr)
        return 5
    if "trigger_garbage" in code:
        print("this is not JSON")
        return 0
    if "trigger_sleep" in code:
        time.sleep(60)
        return 0
    if "trigger_exception" in code:
        reply = {
            "status": "exception",
            "detail": "TypeError: 'NoneType' object is not iterable",
            "mutations": [],
        }
    elif "trigger_assertion" in code:
        reply = {
            "status": "assertion_failure",
            "detail": "expected no remaining events, found 1",
            "mutations": [],
        }
    elif "trigger_timeout" in code:
        reply = {"status": "timeout", "detail": "budget exhausted", "mutations": []}
    else:
        reply = {"status": "ok", "detail": "", "mutations": []}
    json.dump(reply, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
