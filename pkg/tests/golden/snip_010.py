def greet(name):
    msg = "hello"
    print(msg)
