#include "trapstack/cli.hpp"

int main(int argc, char** argv) {
    return trapstack::dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
