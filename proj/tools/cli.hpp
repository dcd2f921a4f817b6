#pragma once

namespace vmet::cli {
int run(int argc, char** argv);
}
