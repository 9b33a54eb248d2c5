def show(x):
    print(int(x))
