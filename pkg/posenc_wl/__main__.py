from posenc_wl.main import main

main()
