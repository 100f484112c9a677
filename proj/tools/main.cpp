// Copyright 2026 The Spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <json.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    spintomo::cli::Environment env;
    try {
        env = spintomo::cli::environment_from_process();
    } catch (const std::exception& e) {
        const nlohmann::ordered_json err{
            {"code", "invalid_argument"}, {"message", e.what()}, {"context", {{"command", ""}}}};
        std::cerr << err.dump() << '\n';
        return 2;
    }
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto outcome = spintomo::cli::run(args, env);
    std::cout << outcome.out;
    std::cerr << outcome.err;
    return outcome.exit_code;
}
