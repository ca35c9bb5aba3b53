namespace hopfforms {}
