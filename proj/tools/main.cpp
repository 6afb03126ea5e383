#include "bootuniq/cli_app.hpp"

int main(int argc, char** argv) { return bootuniq::run_cli(argc, argv); }
