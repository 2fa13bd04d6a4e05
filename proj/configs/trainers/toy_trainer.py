#!/usr/bin/env python3
# Copyright 2026 The tradeoff-bo Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Toy trainer speaking the one-line JSON protocol on stdin/stdout."""

import json
import math
import sys


def main():
    request = json.loads(sys.stdin.readline())
    hp = request["hyperparameters"]
    f = request["train_fraction"]
    lr = hp["learning_rate"]
    hidden = hp["hidden"]
    capacity = 0.9 if hp["model"] == "mlp" else 0.75
    # Peak near lr = 1e-2; more data and width help with diminishing returns.
    fit = math.exp(-0.5 * (math.log10(lr) + 2.0) ** 2)
    accuracy = capacity * fit * (1.0 - math.exp(-3.0 * f)) * (1.0 - math.exp(-hidden / 64.0))
    seconds = f * (1.0 + hidden / 32.0) * (3.0 if hp["model"] == "mlp" else 1.0)
    print(json.dumps({"accuracy": accuracy, "train_seconds": seconds}), flush=True)


if __name__ == "__main__":
    main()
