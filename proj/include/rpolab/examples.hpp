// examples.hpp — Built-in example systems, each stored as a scenario text so
// the registry exercises the same ingestion path as user files.

#pragma once

#include <string>
#include <vector>

namespace rpolab {

struct BuiltinExample {
    std::string name;
    std::string description;
    std::string scenario_text;
};

const std::vector<BuiltinExample>& builtin_examples();
// nullptr when the name is unknown.
const BuiltinExample* find_example(const std::string& name);

} // namespace rpolab
