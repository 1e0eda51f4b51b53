// Copyright 2026 The qfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qfl/cli.hpp"
#include "qfl/tolerance.hpp"

int main(int argc, char **argv) {
    if (const char *scale = std::getenv("QFL_TOLERANCE_SCALE")) {
        char *end = nullptr;
        const double s = std::strtod(scale, &end);
        if (end == scale || *end != '\0' || !(s > 0.0)) {
            std::cerr << "{\"error\": {\"code\": \"InvalidArgument\", \"message\": \"QFL_TOLERANCE_SCALE must be a "
                         "positive number\"}}\n";
            return 2;
        }
        qfl::set_tolerance_scale(s);
    }
    std::vector<std::string> args(argv + 1, argv + argc);
    return qfl::run_command(args, std::cout, std::cerr);
}
