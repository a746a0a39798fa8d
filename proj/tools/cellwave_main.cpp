#include <iostream>
int main(){std::cout << "cellwave\n";}
