from genus8.cli import main
import sys
sys.exit(main())
