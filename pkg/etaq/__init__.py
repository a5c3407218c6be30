# etaq package
