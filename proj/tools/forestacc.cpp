#include "forestacc/cli.hpp"

int main(int argc, char** argv)
{
	return forestacc::run_cli(argc, argv);
}
