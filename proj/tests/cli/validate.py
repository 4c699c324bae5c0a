"""Validates a CLI output record against the versioned JSON schema."""
import json
import sys

import jsonschema

with open(sys.argv[1]) as f:
    schema = json.load(f)
with open(sys.argv[2]) as f:
    record = json.load(f)
jsonschema.validate(record, schema)
