// Placeholder CLI.
int main() { return 0; }
